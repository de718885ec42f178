#include "tropcurve/random_objects.hpp"

namespace tropcurve {

CurvePtr random_curve(RandomSource& rng, const RandomCurveOptions& opts) {
    int n = static_cast<int>(rng.integer(1, opts.max_vertices));
    CurveDescription d;
    for (int i = 0; i < n; ++i) d.vertices.push_back({"v" + std::to_string(i), false});
    int next = 0;
    auto add = [&](Int a, Int b, Extended len) {
        std::optional<std::string> v;
        if (b >= 0) v = "v" + std::to_string(b);
        d.edges.push_back({"e" + std::to_string(next++), "v" + std::to_string(a), v, len});
    };
    for (int i = 1; i < n; ++i) add(rng.integer(0, i - 1), i, rng.positive_rational());
    for (Int k = rng.integer(0, opts.max_extra_edges); k > 0; --k) {
        Int a = rng.integer(0, n - 1), b = rng.integer(0, n - 1);
        if (a == b && !opts.loops) continue;
        add(a, b, rng.positive_rational());
    }
    for (Int k = rng.integer(0, opts.max_rays); k > 0; --k) {
        add(rng.integer(0, n - 1), -1, Extended::pos_inf());
        d.ray_classes[d.edges.back().id] = "c" + std::to_string(rng.integer(0, opts.ray_labels - 1));
    }
    if (d.edges.empty()) {
        d.vertices.push_back({"w", false});
        d.edges.push_back({"e0", "v0", "w", rng.positive_rational()});
    }
    return build_curve(d);
}

CurvePtr random_disconnected_curve(RandomSource& rng, int parts, const RandomCurveOptions& opts) {
    if (parts <= 1) return random_curve(rng, opts);
    std::vector<CurvePtr> cs;
    for (int i = 0; i < parts; ++i) cs.push_back(random_curve(rng, opts));
    return disjoint_union(cs);
}

PointRef random_finite_point(RandomSource& rng, const Curve& c) {
    if (c.num_edges() == 0 || rng.coin(0.3)) {
        std::vector<std::size_t> finite;
        for (std::size_t v = 0; v < c.num_vertices(); ++v)
            if (!c.vertex(v).at_infinity) finite.push_back(v);
        return PointRef::vertex(rng.pick(finite));
    }
    std::size_t e = static_cast<std::size_t>(rng.integer(0, static_cast<Int>(c.num_edges()) - 1));
    Rational span = c.is_infinite(e) ? Rational(5) : c.length(e);
    return c.edge_point(e, span * rng.integer(0, 12) / 12);
}

Subgraph random_subgraph(RandomSource& rng, const CurvePtr& c) {
    SubgraphSpec spec;
    for (Int k = rng.integer(1, 3); k > 0; --k) {
        switch (c->num_edges() == 0 ? 0 : rng.integer(0, 2)) {
            case 0:
                spec.points.push_back(c->point_name(random_finite_point(rng, *c)));
                break;
            case 1: {
                std::size_t e = static_cast<std::size_t>(rng.integer(0, static_cast<Int>(c->num_edges()) - 1));
                auto [uid, shift] = c->user_position(e, Rational(0));
                if (c->is_infinite(e)) {
                    Rational a = rng.integer(0, 4);
                    spec.intervals.push_back({uid, a, rng.coin() ? Extended::pos_inf() : Extended(Rational(a + rng.positive_rational()))});
                } else {
                    Rational a = c->length(e) * rng.integer(0, 4) / 4, b = c->length(e) * rng.integer(0, 4) / 4;
                    if (b < a) std::swap(a, b);
                    spec.intervals.push_back({uid, a + shift, Extended(Rational(b + shift))});
                }
                break;
            }
            default: {
                std::size_t e = static_cast<std::size_t>(rng.integer(0, static_cast<Int>(c->num_edges()) - 1));
                spec.edges.push_back(c->user_position(e, Rational(0)).first);
            }
        }
    }
    return make_subgraph(c, spec);
}

PLFunction random_function(RandomSource& rng, const CurvePtr& c, int terms) {
    std::optional<PLFunction> acc;
    for (int i = 0; i < terms; ++i) {
        PLFunction term = PLFunction::constant(c, rng.rational());
        for (Int k = rng.integer(1, 2); k > 0; --k) {
            Extended l = rng.coin(0.3) ? Extended::pos_inf() : Extended(rng.positive_rational());
            PLFunction cf = chip_fire(random_subgraph(rng, c), l);
            term = odot(term, power(cf, rng.integer(-2, 2)));
        }
        acc = acc ? oplus(*acc, term) : term;
    }
    return *acc;
}

}  // namespace tropcurve
