#include "tropcurve/suites.hpp"

#include <functional>
#include <future>
#include <map>

#include "tropcurve/errors.hpp"
#include "tropcurve/hypersurface.hpp"
#include "tropcurve/morphism.hpp"
#include "tropcurve/random_objects.hpp"
#include "tropcurve/realization.hpp"

namespace tropcurve {

namespace {

constexpr std::size_t kKeptFailures = 5;

// Collects per-case verdicts; a case fails when any of its checks fails or it throws.
class Tally {
public:
    explicit Tally(std::string name) { r_.name = std::move(name); }

    void run(const std::string& label, const std::function<bool()>& body) {
        ++r_.cases;
        std::string why;
        bool pass = false;
        try {
            pass = body();
        } catch (const std::exception& e) {
            why = std::string(": threw ") + e.what();
        }
        if (pass) return;
        ++r_.failed;
        if (r_.failures.size() < kKeptFailures) r_.failures.push_back(label + " #" + std::to_string(r_.cases) + why);
    }
    SuiteResult result() && { return std::move(r_); }

private:
    SuiteResult r_;
};

SuiteResult tropical_core_suite(std::uint64_t seed) {
    Tally t("tropical_core");
    RandomSource rng(seed);
    for (int i = 0; i < 1000; ++i)
        t.run("semifield laws in T", [&] {
            TropValue a = rng.trop_value(), b = rng.trop_value(), c = rng.trop_value();
            return oplus(a, oplus(b, c)) == oplus(oplus(a, b), c) && odot(a, odot(b, c)) == odot(odot(a, b), c) &&
                   oplus(a, b) == oplus(b, a) && odot(a, b) == odot(b, a) &&
                   odot(a, oplus(b, c)) == oplus(odot(a, b), odot(a, c)) && oplus(a, a) == a &&
                   (a.is_neg_inf() || odot(a, inverse(a)) == TropValue::one());
        });
    for (std::size_t n = 0; n <= 5; ++n)
        for (int i = 0; i < 200; ++i)
            t.run("semifield laws in R_" + std::to_string(n), [&] {
                Germ a = rng.germ(n), b = rng.germ(n), c = rng.germ(n);
                return boxplus(a, boxplus(b, c)) == boxplus(boxplus(a, b), c) &&
                       boxdot(a, boxdot(b, c)) == boxdot(boxdot(a, b), c) && boxplus(a, b) == boxplus(b, a) &&
                       boxdot(a, boxplus(b, c)) == boxplus(boxdot(a, b), boxdot(a, c)) && boxplus(a, a) == a &&
                       (a.is_neg_inf() || boxdot(a, inverse(a)) == Germ::one(n));
            });
    for (std::size_t n = 1; n <= kMaxGeneratorCheck; ++n)
        t.run("generators of R_" + std::to_string(n), [&] { return verify_rn_generators(n).pass; });
    for (int i = 0; i < 100; ++i)
        t.run("plane hypersurfaces are balanced complexes", [&] {
            TropPoly f = rng.poly(2, 6, 3);
            if (f.is_monomial()) return true;
            auto k = hypersurface2(f, auto_window(f));
            return complex_problems(k).empty() && check_balanced(k).balanced;
        });
    return std::move(t).result();
}

SuiteResult curve_model_suite(std::uint64_t seed) {
    Tally t("curve_model");
    RandomSource rng(seed);
    for (int i = 0; i < 150; ++i)
        t.run("distance is a metric", [&] {
            auto c = random_curve(rng);
            PointRef p = random_finite_point(rng, *c), q = random_finite_point(rng, *c), r = random_finite_point(rng, *c);
            Extended pq = distance(*c, p, q).value, qp = distance(*c, q, p).value;
            Extended pr = distance(*c, p, r).value, rq = distance(*c, r, q).value;
            return pq == qp && distance(*c, p, p).value == Extended(Rational(0)) &&
                   pq <= Extended(Rational(pr.value() + rq.value()));
        });
    for (int i = 0; i < 100; ++i)
        t.run("canonical model is idempotent", [&] {
            auto c = canonical_model(*random_curve(rng));
            return *canonical_model(*c) == *c;
        });
    for (int i = 0; i < 100; ++i)
        t.run("whole-curve subgraph keeps the component count", [&] {
            auto c = random_disconnected_curve(rng, static_cast<int>(rng.integer(1, 3)));
            return whole_curve(c).num_components() == c->num_components();
        });
    return std::move(t).result();
}

SuiteResult rat_fun_suite(std::uint64_t seed) {
    Tally t("rat_fun");
    RandomSource rng(seed);
    for (int i = 0; i < 300; ++i)
        t.run("semifield laws for functions", [&] {
            auto c = random_curve(rng);
            auto f = random_function(rng, c), g = random_function(rng, c), h = random_function(rng, c);
            return oplus(f, oplus(g, h)) == oplus(oplus(f, g), h) && odot(f, oplus(g, h)) == oplus(odot(f, g), odot(f, h)) &&
                   oplus(f, g) == oplus(g, f) && oplus(f, f) == f && odot(f, inverse(f)) == PLFunction::constant(c, 0);
        });
    for (int i = 0; i < 200; ++i)
        t.run("principal divisors are additive", [&] {
            auto c = random_curve(rng);
            auto f = random_function(rng, c), g = random_function(rng, c);
            return div_of(odot(f, g)) == div_of(f) + div_of(g) && div_of(inverse(f)) == -div_of(f);
        });
    for (int i = 0; i < 200; ++i)
        t.run("module degree is invariant under tropical combinations", [&] {
            auto c = random_curve(rng);
            std::vector<PLFunction> gens;
            for (Int k = rng.integer(1, 3); k > 0; --k) gens.push_back(random_function(rng, c, 2));
            auto more = gens;
            for (int k = 0; k < 3; ++k) {
                std::optional<PLFunction> comb;
                for (const auto& g : gens)
                    if (!rng.coin(0.3)) {
                        PLFunction s = scalar(rng.rational(), g);
                        comb = comb ? oplus(*comb, s) : s;
                    }
                if (comb) more.push_back(*comb);
            }
            return module_degree(more) == module_degree(gens);
        });
    for (int i = 0; i < 200; ++i) {
        auto c = random_curve(rng);
        auto g = random_subgraph(rng, c);
        std::vector<PLFunction> parts;
        for (std::size_t k = 0; k < g.num_components(); ++k) parts.push_back(random_function(rng, component_curve(g, k).curve, 2));
        bool consistent = true;
        for (const auto& p : parts) consistent = consistent && respects_parallel(p).ok;
        if (!consistent) continue;  // such parts have no extension
        t.run("restrict after extend is the identity", [&] {
            return restrict_to(extend(g, parts, -min_extension_slope(g, parts)), g) == parts;
        });
    }
    for (int i = 0; i < 50; ++i)
        t.run("witness on a disconnected curve", [&] {
            auto c = random_disconnected_curve(rng, static_cast<int>(rng.integer(2, 3)));
            auto w = disconnect_witness(c);
            return w && check_witness(w->s, w->a1, w->a2, w->a3).ok();
        });
    for (int i = 0; i < 100; ++i)
        t.run("no witness of the constructed shape on a connected curve", [&] {
            auto c = random_curve(rng);
            auto s = random_function(rng, c);
            Rational a3 = rng.rational(), step = rng.positive_rational();
            return !disconnect_witness(c) && !check_witness(s, a3 + 2 * step, a3 + step, a3).ok();
        });
    return std::move(t).result();
}

SuiteResult morphism_suite(std::uint64_t seed) {
    Tally t("morphism");
    RandomSource rng(seed);
    for (int i = 0; i < 200; ++i)
        t.run("pullback is a homomorphism", [&] {
            auto target = random_curve(rng);
            auto m = random_morphism(rng, target);
            auto f = random_function(rng, target, 2), g = random_function(rng, target, 2);
            PointRef p = random_finite_point(rng, *m.source);
            return validate_morphism(m).ok && pullback(m, oplus(f, g)) == oplus(pullback(m, f), pullback(m, g)) &&
                   pullback(m, odot(f, g)) == odot(pullback(m, f), pullback(m, g)) &&
                   eval(pullback(m, f), p) == eval(f, apply(m, p));
        });
    for (int i = 0; i < 500; ++i)
        t.run("localization is a homomorphism and detects harmonicity", [&] {
            auto c = random_curve(rng);
            Localization loc(c, random_finite_point(rng, *c));
            auto f = random_function(rng, c, 2), g = random_function(rng, c, 2);
            Germ gf = loc.apply(f), gg = loc.apply(g);
            return loc.apply(oplus(f, g)) == boxplus(gf, gg) && loc.apply(odot(f, g)) == boxdot(gf, gg) &&
                   (germ_omega(gf) == 0) == is_harmonic_at(f, loc.point());
        });
    for (int i = 0; i < 100; ++i)
        t.run("localization is surjective", [&] {
            auto c = random_curve(rng);
            return localization_surjectivity(c, random_finite_point(rng, *c), rng, 5).ok();
        });
    for (int i = 0; i < 100; ++i)
        t.run("weights are recovered from generators", [&] {
            auto target = random_curve(rng);
            auto m = random_morphism(rng, target, false);
            auto w = weight_check(m);
            if (!w.is_weight) return true;
            // generators of a whole semifield would give the weight itself; one pullback gives a multiple
            auto g = pullback(m, random_function(rng, target, 2));
            for (const auto& [e, k] : w.edge_weights) {
                try {
                    if (weight_from_generators({g}, e) % k != 0) return false;
                } catch (const TropError&) {
                    // level on that edge
                }
            }
            return true;
        });
    return std::move(t).result();
}

SuiteResult realization_suite(std::uint64_t seed) {
    Tally t("realization");
    RandomSource rng(seed);
    for (int i = 0; i < 40; ++i) {
        TropPoly f = rng.poly(2, 6, 3);
        if (f.is_monomial()) continue;
        auto k = hypersurface2(f, auto_window(f));
        if (!is_connected(k) || (k.segments.empty() && k.rays.empty())) continue;
        t.run("balanced complexes round-trip through curves", [&] {
            auto in = ingest_balanced(k);
            auto rep = harmonic_realization_check(in.realization);
            return rep.all_harmonic && rep.balance.balanced && in.realization.image == canonical_complex(k);
        });
        t.run("fitted polynomials reproduce the complex", [&] {
            auto fit = fit_tropical_polynomial(k);
            return hypersurface2(fit, auto_window(fit)) == canonical_complex(k);
        });
    }
    int pairs = 0;
    for (int attempt = 0; attempt < 2000 && pairs < 50; ++attempt) {
        TropPoly f = rng.poly(2, 5, 2), g = rng.poly(2, 5, 2);
        if (f.is_monomial() || g.is_monomial()) continue;
        auto a = hypersurface2(f, auto_window(f));
        auto b = translate(hypersurface2(g, auto_window(g)), RatVec{rng.rational(), rng.rational()});
        if (!is_connected(a) || !is_connected(b) || a.rays.empty() || b.rays.empty()) continue;
        std::vector<IntersectionPoint> ab;
        try {
            ab = intersect(a, b);
        } catch (const TropError&) {
            continue;
        }
        ++pairs;
        t.run("transversal intersections are symmetric and obey the degree bound",
              [&] { return intersect(b, a) == ab && bezout_check(a, b).ok(); });
    }
    return std::move(t).result();
}

const std::map<std::string, SuiteResult (*)(std::uint64_t)>& registry() {
    static const std::map<std::string, SuiteResult (*)(std::uint64_t)> r{
        {"tropical_core", tropical_core_suite}, {"curve_model", curve_model_suite}, {"rat_fun", rat_fun_suite},
        {"morphism", morphism_suite},           {"realization", realization_suite}};
    return r;
}

}  // namespace

std::vector<std::string> suite_names() { return {"tropical_core", "curve_model", "rat_fun", "morphism", "realization"}; }

SuiteResult run_suite(const std::string& name, std::uint64_t seed) {
    auto it = registry().find(name);
    if (it == registry().end()) throw TropError("no suite named '" + name + "'");
    return it->second(seed);
}

std::vector<SuiteResult> run_all_suites(bool parallel, std::uint64_t seed) {
    std::vector<SuiteResult> out;
    if (!parallel) {
        for (const auto& n : suite_names()) out.push_back(run_suite(n, seed));
        return out;
    }
    std::vector<std::future<SuiteResult>> jobs;
    for (const auto& n : suite_names()) jobs.push_back(std::async(std::launch::async, [n, seed] { return run_suite(n, seed); }));
    for (auto& j : jobs) out.push_back(j.get());  // collected in suite_names() order
    return out;
}

}  // namespace tropcurve
