#include <numeric>

#include "bridge.hpp"
#include "doctest.h"
#include "fn_oracle.hpp"
#include "tropcurve/errors.hpp"
#include "tropcurve/morphism.hpp"
#include "tropcurve/random_objects.hpp"

using namespace tropcurve;

namespace {

struct E {
    std::string id, u, v, len;
};

CurvePtr make(std::vector<std::string> vertices, std::vector<E> edges, std::map<std::string, std::string> classes = {}) {
    CurveDescription d;
    for (auto& v : vertices) d.vertices.push_back({v, false});
    for (auto& e : edges) {
        std::optional<std::string> v;
        if (!e.v.empty()) v = e.v;
        d.edges.push_back({e.id, e.u, v, parse_extended(e.len)});
    }
    d.ray_classes = std::move(classes);
    return build_curve(d);
}

CurvePtr real_line() {
    return make({"O"}, {{"l", "O", "", "inf"}, {"r", "O", "", "inf"}}, {{"l", "left"}, {"r", "right"}});
}

using BP = std::vector<std::pair<Rational, Rational>>;

PLFunction line_multiple(const CurvePtr& c, Int k) {
    return make_function(c, {{"r", {BP{{Q(0), Q(0)}}, k}}, {"l", {BP{{Q(0), Q(0)}}, -k}}});
}

using Img = MorphismDescription::Image;

Morphism doubling(const CurvePtr& line) {
    return make_morphism(line, line, {{{"O", "O"}}, {{"l", Img{false, "l"}}, {"r", Img{false, "r"}}}, {{"l", 2}, {"r", 2}}});
}

// Image of a point computed from the raw maps: offsets scale by the degree, measured from the end that
// the source u vertex lands on.
PointRef oracle_image(const Morphism& m, const PointRef& p) {
    if (p.is_vertex()) return PointRef::vertex(m.vertex_map[p.index]);
    const auto& img = m.edge_map[p.index];
    if (img.collapsed) return PointRef::vertex(img.index);
    const auto& te = m.target->edge(img.index);
    oracle::Frac t = to_frac(p.offset) * oracle::Frac(m.deg[p.index]);
    if (m.vertex_map[m.source->edge(p.index).u] != te.u) t = to_frac(m.target->length(img.index)) - t;
    return m.target->edge_point(img.index, to_rat(t));
}

}  // namespace

// ---- validation ----

TEST_CASE("validate_morphism examples") {
    RandomSource rng(31);
    auto c = random_curve(rng);
    auto id = identity_morphism(c);
    CHECK(validate_morphism(id).ok);
    for (Int k : id.deg) CHECK(k == 1);

    auto line = real_line();
    CHECK(validate_morphism(doubling(line)).ok);

    auto a = make({"A", "B"}, {{"s", "A", "B", "1"}}), b = make({"P", "Q"}, {{"t", "P", "Q", "3"}});
    auto bad = make_morphism(a, b, {{{"A", "P"}, {"B", "Q"}}, {{"s", Img{false, "t"}}}, {{"s", 2}}});
    auto rep = validate_morphism(bad);
    CHECK_FALSE(rep.ok);
    REQUIRE(rep.violations.size() == 1);
    CHECK(rep.violations[0].find("image length 3") != std::string::npos);
}

TEST_CASE("validate_morphism: endpoints, degrees and collapse") {
    auto a = make({"A", "B"}, {{"s", "A", "B", "1"}}), b = make({"P", "Q"}, {{"t", "P", "Q", "1"}});
    CHECK_FALSE(validate_morphism(make_morphism(a, b, {{{"A", "P"}, {"B", "P"}}, {{"s", Img{false, "t"}}}, {{"s", 1}}})).ok);
    CHECK_FALSE(validate_morphism(make_morphism(a, b, {{{"A", "P"}, {"B", "Q"}}, {{"s", Img{false, "t"}}}, {{"s", 0}}})).ok);
    CHECK(validate_morphism(make_morphism(a, b, {{{"A", "Q"}, {"B", "P"}}, {{"s", Img{false, "t"}}}, {{"s", 1}}})).ok);
    CHECK(validate_morphism(make_morphism(a, b, {{{"A", "Q"}, {"B", "Q"}}, {{"s", Img{true, "Q"}}}, {{"s", 0}}})).ok);
    CHECK_FALSE(validate_morphism(make_morphism(a, b, {{{"A", "Q"}, {"B", "P"}}, {{"s", Img{true, "Q"}}}, {{"s", 0}}})).ok);
    CHECK_THROWS_AS(make_morphism(a, b, {{{"A", "P"}}, {{"s", Img{false, "t"}}}, {{"s", 1}}}), TropError);
    auto loop = make({"P"}, {{"o", "P", "P", "2"}});
    CHECK_THROWS_AS(make_morphism(a, loop, {{{"A", "P"}, {"B", "P"}}, {{"s", Img{false, "o"}}}, {{"s", 1}}}), TropError);
}

TEST_CASE("validate_morphism: parallel-ray law") {
    auto src = make({"O"}, {{"a", "O", "", "inf"}, {"b", "O", "", "inf"}}, {{"a", "p"}, {"b", "p"}});
    auto tgt = make({"O"}, {{"x", "O", "", "inf"}, {"y", "O", "", "inf"}}, {{"x", "p"}, {"y", "q"}});
    auto split = make_morphism(src, tgt, {{{"O", "O"}}, {{"a", Img{false, "x"}}, {"b", Img{false, "y"}}}, {{"a", 1}, {"b", 1}}});
    CHECK_FALSE(validate_morphism(split).ok);
    auto uneven = make_morphism(src, tgt, {{{"O", "O"}}, {{"a", Img{false, "x"}}, {"b", Img{false, "x"}}}, {{"a", 1}, {"b", 2}}});
    CHECK_FALSE(validate_morphism(uneven).ok);
    auto same = make_morphism(src, tgt, {{{"O", "O"}}, {{"a", Img{false, "x"}}, {"b", Img{false, "x"}}}, {{"a", 2}, {"b", 2}}});
    CHECK(validate_morphism(same).ok);
    auto half = make_morphism(src, tgt, {{{"O", "O"}}, {{"a", Img{false, "x"}}, {"b", Img{true, "O"}}}, {{"a", 1}, {"b", 0}}});
    CHECK_FALSE(validate_morphism(half).ok);
    auto none = make_morphism(src, tgt, {{{"O", "O"}}, {{"a", Img{true, "O"}}, {"b", Img{true, "O"}}}, {{"a", 0}, {"b", 0}}});
    CHECK(validate_morphism(none).ok);
}

TEST_CASE("morphism descriptions round-trip") {
    RandomSource rng(32);
    for (int trial = 0; trial < 50; ++trial) {
        auto m = random_morphism(rng, random_curve(rng));
        auto back = make_morphism(m.source, m.target, describe(m));
        CHECK(back.vertex_map == m.vertex_map);
        CHECK(back.edge_map == m.edge_map);
        CHECK(back.deg == m.deg);
    }
}

// ---- pullback and composition ----

TEST_CASE("pullback examples") {
    auto line = real_line();
    auto x = line_multiple(line, 1);
    CHECK(pullback(doubling(line), x) == line_multiple(line, 2));
    RandomSource rng(33);
    auto c = random_curve(rng);
    auto f = random_function(rng, c);
    CHECK(pullback(identity_morphism(c), f) == f);

    auto src = make({"A", "B", "C"}, {{"s", "A", "B", "1"}, {"e", "B", "C", "5"}});
    auto tgt = make({"P", "Q"}, {{"t", "P", "Q", "2"}});
    auto m = make_morphism(src, tgt, {{{"A", "P"}, {"B", "Q"}, {"C", "Q"}},
                                      {{"s", Img{false, "t"}}, {"e", Img{true, "Q"}}},
                                      {{"s", 2}, {"e", 0}}});
    auto g = make_function(tgt, {{"t", {BP{{Q(0), Q(1)}, {Q(2), Q(5)}}}}});
    auto h = pullback(m, g);
    CHECK(h.profile(src->edge_index("e")) == EdgeProfile::affine(Extended(Q(5)), Q(5), 0));
    CHECK(eval(h, src->parse_point("s@1/2")) == Extended(Q(3)));
    CHECK(pullback(m, PLFunction::neg_inf(tgt)).is_neg_inf());
    auto bad = make_morphism(src, tgt, {{{"A", "P"}, {"B", "Q"}, {"C", "Q"}},
                                        {{"s", Img{false, "t"}}, {"e", Img{true, "Q"}}},
                                        {{"s", 1}, {"e", 0}}});
    CHECK_THROWS_AS(pullback(bad, g), TropError);
}

TEST_CASE("property: pullback is a semifield homomorphism and agrees pointwise") {
    RandomSource rng(34);
    for (int trial = 0; trial < 300; ++trial) {
        auto t = random_curve(rng);
        auto m = random_morphism(rng, t);
        REQUIRE(validate_morphism(m).ok);
        auto f = random_function(rng, t, 2), g = random_function(rng, t, 2);
        auto a = rng.rational();
        CHECK(pullback(m, oplus(f, g)) == oplus(pullback(m, f), pullback(m, g)));
        CHECK(pullback(m, odot(f, g)) == odot(pullback(m, f), pullback(m, g)));
        CHECK(pullback(m, PLFunction::constant(t, a)) == PLFunction::constant(m.source, a));
        for (int k = 0; k < 4; ++k) {
            PointRef p = random_finite_point(rng, *m.source);
            PointRef q = oracle_image(m, p);
            CHECK(apply(m, p) == q);
            CHECK(eval(pullback(m, f), p) == eval(f, q));
        }
        if (respects_parallel(f).ok) CHECK(respects_parallel(pullback(m, f)).ok);
    }
}

TEST_CASE("property: composition is valid, multiplies degrees and pulls back in two steps") {
    RandomSource rng(35);
    for (int trial = 0; trial < 150; ++trial) {
        auto u = random_curve(rng);
        auto second = random_morphism(rng, u);
        auto first = random_morphism(rng, second.source);
        auto m = compose(first, second);
        CHECK(validate_morphism(m).ok);
        for (std::size_t e = 0; e < first.edge_map.size(); ++e) {
            const auto& a = first.edge_map[e];
            Int expect = a.collapsed ? 0 : first.deg[e] * second.deg[a.index];
            CHECK(m.deg[e] == expect);
        }
        auto f = random_function(rng, u, 2);
        CHECK(pullback(m, f) == pullback(first, pullback(second, f)));
    }
}

// ---- weights ----

TEST_CASE("weight_check examples") {
    auto line = real_line();
    auto w2 = weight_check(doubling(line));
    CHECK(w2.is_weight);
    CHECK(w2.edge_weights == std::map<std::string, Int>{{"l", 2}, {"r", 2}});
    auto w1 = weight_check(identity_morphism(line));
    CHECK(w1.is_weight);
    CHECK(w1.edge_weights == std::map<std::string, Int>{{"l", 1}, {"r", 1}});

    auto path = make({"A", "M", "B"}, {{"e1", "A", "M", "1"}, {"e2", "M", "B", "1"}});
    auto seg = make({"P", "Q"}, {{"s", "P", "Q", "1"}});
    auto fold = make_morphism(path, seg, {{{"A", "P"}, {"M", "Q"}, {"B", "P"}},
                                          {{"e1", Img{false, "s"}}, {"e2", Img{false, "s"}}},
                                          {{"e1", 1}, {"e2", 1}}});
    CHECK(validate_morphism(fold).ok);
    auto wf = weight_check(fold);
    CHECK_FALSE(wf.is_weight);
    CHECK(wf.reason.find("not bijective") != std::string::npos);
}

TEST_CASE("weight_check: ray classes must correspond both ways") {
    auto src = make({"O"}, {{"a", "O", "", "inf"}, {"b", "O", "", "inf"}}, {{"a", "p"}, {"b", "q"}});
    auto tgt = make({"O"}, {{"x", "O", "", "inf"}, {"y", "O", "", "inf"}}, {{"x", "p"}, {"y", "p"}});
    // a, b in different classes onto one class: valid, bijective, but the class map is not injective
    auto m = make_morphism(src, tgt, {{{"O", "O"}}, {{"a", Img{false, "x"}}, {"b", Img{false, "y"}}}, {{"a", 1}, {"b", 1}}});
    CHECK(validate_morphism(m).ok);
    CHECK_FALSE(weight_check(m).is_weight);
}

TEST_CASE("weight_from_generators examples") {
    auto line = real_line();
    CHECK(weight_from_generators({line_multiple(line, 2)}, "r") == 2);
    CHECK(weight_from_generators({line_multiple(line, 1)}, "r") == 1);
    CHECK(weight_from_generators({line_multiple(line, 2), line_multiple(line, 3)}, "l") == std::gcd(2, 3));
    try {
        weight_from_generators({PLFunction::constant(line, Q(1))}, "r");
        FAIL("level edge accepted");
    } catch (const TropError& e) {
        CHECK(std::string(e.what()) == "weight undetermined on level edge");
    }
    auto bent = make_function(line, {{"r", {BP{{Q(0), Q(0)}, {Q(1), Q(1)}}, 0}}, {"l", {BP{{Q(0), Q(0)}}, 0}}});
    CHECK_THROWS_AS(weight_from_generators({bent}, "r"), TropError);
}

TEST_CASE("Example weights 1 and 2 recovered by both routes") {
    auto line = real_line();
    auto x = line_multiple(line, 1);
    for (Int k : {1, 2}) {
        Morphism phi = k == 1 ? identity_morphism(line) : doubling(line);
        auto w = weight_check(phi);
        REQUIRE(w.is_weight);
        auto gen = pullback(phi, x);
        for (const char* e : {"l", "r"}) {
            CHECK(w.edge_weights.at(e) == k);
            CHECK(weight_from_generators({gen}, e) == k);
        }
    }
}

TEST_CASE("property: generator gcd recovers the weights of a weight morphism") {
    RandomSource rng(36);
    for (int trial = 0; trial < 100; ++trial) {
        // star with finite spokes and rays; one generator per spoke rising on it, zero elsewhere
        CurveDescription td;
        td.vertices.push_back({"O", false});
        int spokes = static_cast<int>(rng.integer(1, 4));
        std::vector<std::string> ids;
        for (int i = 0; i < spokes; ++i) {
            std::string id = "e" + std::to_string(i);
            ids.push_back(id);
            if (rng.coin()) {
                td.edges.push_back({id, "O", std::nullopt, Extended::pos_inf()});
                td.ray_classes[id] = "c" + std::to_string(i);
            } else {
                td.vertices.push_back({"T" + std::to_string(i), false});
                td.edges.push_back({id, "O", "T" + std::to_string(i), Extended(Rational(6 * rng.integer(1, 3)))});
            }
        }
        auto sd = td;
        MorphismDescription md{{{"O", "O"}}, {}, {}};
        std::map<std::string, Int> degs;
        for (auto& e : sd.edges) {
            Int k = rng.integer(1, 3);
            degs[e.id] = k;
            if (e.length.finite()) e.length = Extended(Rational(e.length.value() / k));
            md.edge_map[e.id] = Img{false, e.id};
            md.degrees[e.id] = k;
        }
        for (auto& v : sd.vertices) md.vertex_map[v.id] = v.id;
        auto t = build_curve(td), s = build_curve(sd);
        auto m = make_morphism(s, t, md);
        auto w = weight_check(m);
        REQUIRE(w.is_weight);
        std::vector<PLFunction> gens;
        for (const auto& id : ids) {
            std::map<std::string, UserProfile> up;
            for (const auto& e : td.edges) {
                if (e.id != id) up[e.id] = UserProfile{e.length.finite() ? BP{{Q(0), Q(0)}, {e.length.value(), Q(0)}} : BP{{Q(0), Q(0)}}, 0};
                else if (e.length.finite()) up[e.id] = UserProfile{BP{{Q(0), Q(0)}, {e.length.value(), e.length.value()}}, 0};
                else up[e.id] = UserProfile{BP{{Q(0), Q(0)}}, 1};
            }
            gens.push_back(pullback(m, make_function(t, up)));
        }
        for (const auto& id : ids) {
            CHECK(w.edge_weights.at(id) == degs[id]);
            CHECK(weight_from_generators(gens, id) == degs[id]);
        }
    }
}

// ---- localization ----

TEST_CASE("localize examples") {
    auto star = make({"O", "X", "Y", "Z"}, {{"a", "O", "X", "1"}, {"b", "O", "Y", "1"}, {"c", "O", "Z", "1"}});
    Localization loc(star, star->parse_point("O"));
    CHECK(loc.order_ids() == std::vector<std::string>{"a+", "b+", "c+"});
    auto cf = chip_fire(make_subgraph(star, SubgraphSpec{{"O"}, {}, {}}), Extended(Q(1, 2)));
    CHECK(loc.apply(cf) == Germ(Q(0), {-1, -1, -1}));
    CHECK(loc.apply(PLFunction::constant(star, Q(7))) == Germ(Q(7), {0, 0, 0}));
    CHECK(loc.apply(PLFunction::neg_inf(star)) == Germ::zero(3));

    Localization custom(star, star->parse_point("O"), {"c+", "a+", "b+"});
    auto h = make_function(star, {{"a", {BP{{Q(0), Q(0)}, {Q(1), Q(1)}}}},
                                  {"b", {BP{{Q(0), Q(0)}, {Q(1), Q(2)}}}},
                                  {"c", {BP{{Q(0), Q(0)}, {Q(1), Q(-3)}}}}});
    CHECK(custom.apply(h) == Germ(Q(0), {-3, 1, 2}));
    CHECK_THROWS_AS(Localization(star, star->parse_point("O"), {"a+", "b+"}), TropError);
    CHECK_THROWS_AS(Localization(star, star->parse_point("O"), {"a+", "b+", "b+"}), TropError);
    CHECK_THROWS_AS(Localization(star, star->parse_point("O"), {"a+", "b+", "d+"}), TropError);
    auto line = make({"O"}, {{"r", "O", "", "inf"}}, {{"r", "p"}});
    CHECK_THROWS_AS(Localization(line, line->parse_point("r@inf")), TropError);
}

TEST_CASE("localize: bump preimages reproduce prescribed germs") {
    auto seg = make({"A", "B"}, {{"s", "A", "B", "2"}});
    Localization mid(seg, seg->parse_point("s@1/2"));
    Germ g(Q(1), {3, -4});
    auto f = mid.preimage(g);
    CHECK(mid.apply(f) == g);
    // oracle: the slopes seen by finite differences at the point
    auto dirs = mid.order();
    CHECK(fn_oracle::fd_slope(f, mid.point(), dirs[0]) == 3);
    CHECK(fn_oracle::fd_slope(f, mid.point(), dirs[1]) == -4);
    CHECK(eval(f, seg->parse_point("A")) == Extended(Q(1)));
    CHECK(eval(f, seg->parse_point("B")) == Extended(Q(1)));

    Localization leaf(seg, seg->parse_point("A"));
    CHECK(leaf.apply(leaf.preimage(Germ(Q(0), {5}))) == Germ(Q(0), {5}));
    CHECK_THROWS_AS(leaf.preimage(Germ(Q(0), {5, 1})), TropError);

    RandomSource rng(37);
    auto rep = localization_surjectivity(seg, seg->parse_point("s@1/2"), rng);
    CHECK(rep.valence == 2);
    CHECK(rep.ok());
}

TEST_CASE("property: bump preimages on random curves and points") {
    RandomSource rng(38);
    for (int trial = 0; trial < 200; ++trial) {
        auto c = random_curve(rng);
        auto x = random_finite_point(rng, *c);
        auto rep = localization_surjectivity(c, x, rng, 5);
        CHECK(rep.valence == c->valence(x));
        CHECK(rep.ok());
    }
}

TEST_CASE("property: localization is a homomorphism and detects harmonicity") {
    RandomSource rng(39);
    int harmonic = 0, not_harmonic = 0;
    for (int trial = 0; trial < 500; ++trial) {
        auto c = random_curve(rng);
        auto x = random_finite_point(rng, *c);
        Localization loc(c, x);
        auto f = random_function(rng, c, 2), g = random_function(rng, c, 2);
        Germ gf = loc.apply(f), gg = loc.apply(g);
        CHECK(loc.apply(oplus(f, g)) == boxplus(gf, gg));
        CHECK(loc.apply(odot(f, g)) == boxdot(gf, gg));
        for (std::size_t j = 0; j < loc.n(); ++j) CHECK(gf.slopes()[j] == fn_oracle::fd_slope(f, x, loc.order()[j]));
        bool h = is_harmonic_at(f, x);
        CHECK((germ_omega(gf) == 0) == h);
        (h ? harmonic : not_harmonic)++;
    }
    CHECK(harmonic > 50);
    CHECK(not_harmonic > 50);
}

TEST_CASE("weighted_local_image examples") {
    auto line = real_line();
    auto lat = weighted_local_image(doubling(line), line->parse_point("r@4"));
    CHECK(lat.weights == IntVec{2, 2});
    CHECK(lat.source_point == line->parse_point("r@2"));
    CHECK(weighted_local_image(identity_morphism(line), line->parse_point("O")).weights == IntVec{1, 1});

    auto src = make({"A", "M", "B"}, {{"e1", "A", "M", "1"}, {"e2", "M", "B", "1"}});
    auto tgt = make({"A", "M", "B"}, {{"e1", "A", "M", "1"}, {"e2", "M", "B", "3"}});
    auto m = make_morphism(src, tgt, {{{"A", "A"}, {"M", "M"}, {"B", "B"}},
                                      {{"e1", Img{false, "e1"}}, {"e2", Img{false, "e2"}}},
                                      {{"e1", 1}, {"e2", 3}}});
    auto weld = weighted_local_image(m, tgt->parse_point("M"));
    CHECK(weld.order == std::vector<std::string>{"e1-", "e2+"});
    CHECK(weld.weights == IntVec{1, 3});

    auto path = make({"A", "M", "B"}, {{"e1", "A", "M", "1"}, {"e2", "M", "B", "1"}});
    auto seg = make({"P", "Q"}, {{"s", "P", "Q", "1"}});
    auto fold = make_morphism(path, seg, {{{"A", "P"}, {"M", "Q"}, {"B", "P"}},
                                          {{"e1", Img{false, "s"}}, {"e2", Img{false, "s"}}},
                                          {{"e1", 1}, {"e2", 1}}});
    CHECK_THROWS_AS(weighted_local_image(fold, seg->parse_point("Q")), TropError);
}

TEST_CASE("property: pulled-back slopes lie in the weighted lattice") {
    RandomSource rng(40);
    int weights = 0;
    for (int trial = 0; trial < 100; ++trial) {
        auto t = random_curve(rng);
        Morphism m = random_morphism(rng, t, false);
        if (!weight_check(m).is_weight) continue;
        ++weights;
        auto x = random_finite_point(rng, *t);
        auto lat = weighted_local_image(m, x);
        Localization loc(m.source, lat.source_point);
        for (int k = 0; k < 3; ++k) {
            Germ g = loc.apply(pullback(m, random_function(rng, t, 2)));
            for (std::size_t j = 0; j < g.n(); ++j) CHECK(g.slopes()[j] % lat.weights[j] == 0);
        }
    }
    CHECK(weights >= 80);
}
