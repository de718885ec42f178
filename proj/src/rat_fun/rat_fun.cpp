#include "tropcurve/rat_fun.hpp"

#include <algorithm>
#include <set>

#include "profile_ops.hpp"
#include "tropcurve/errors.hpp"

namespace tropcurve {

namespace {

bool same_curve(const CurvePtr& a, const CurvePtr& b) { return a == b || *a == *b; }

// -dist(·, [a, b]) along an edge of the given length.
EdgeProfile interval_distance(const Extended& length, const Rational& a, const Extended& b) {
    EdgeProfile p;
    auto add = [&](const Rational& t, const Rational& v) {
        if (p.t.empty() || p.t.back() < t) {
            p.t.push_back(t);
            p.v.push_back(v);
        }
    };
    add(Rational(0), a);
    add(a, Rational(0));
    if (b.finite()) {
        add(b.value(), Rational(0));
        if (length.finite()) add(length.value(), length.value() - b.value());
        else p.tail = 1;
    }
    return p;
}

}  // namespace

// ---- chip firing ----

PLFunction chip_fire(const Subgraph& g, const Extended& l) {
    const CurvePtr& cp = g.owner();
    const Curve& c = *cp;
    if (!(Extended(Rational(0)) < l)) throw TropError("chip-firing length must be positive");
    std::vector<bool> meets(c.num_components(), false);
    for (std::size_t v = 0; v < c.num_vertices(); ++v)
        if (g.vertex_in()[v]) meets[c.component_of_vertex(v)] = true;
    for (std::size_t e = 0; e < c.num_edges(); ++e)
        if (!g.intervals()[e].empty()) meets[c.component_of_vertex(c.edge(e).u)] = true;

    auto dist = subgraph_vertex_distances(g);
    std::vector<EdgeProfile> ps;
    for (std::size_t e = 0; e < c.num_edges(); ++e) {
        const auto& ed = c.edge(e);
        const bool inf = c.is_infinite(e);
        if (!meets[c.component_of_vertex(ed.u)]) {
            ps.push_back(EdgeProfile::affine(ed.length, Rational(0), 0));
            continue;
        }
        std::optional<EdgeProfile> d;
        auto take = [&](const EdgeProfile& p) { d = d ? profile::min(*d, p, inf) : p; };
        if (dist[ed.u].finite()) take(EdgeProfile::affine(ed.length, dist[ed.u].value(), 1));
        if (!inf && dist[ed.v].finite())
            take(EdgeProfile::affine(ed.length, dist[ed.v].value() + ed.length.value(), -1));
        for (const auto& iv : g.intervals()[e]) take(interval_distance(ed.length, iv.a, iv.b));
        if (!d) throw TropError("internal: edge in a component met by the subgraph has no distance data");
        EdgeProfile capped = l.finite() ? profile::min(*d, EdgeProfile::affine(ed.length, l.value(), 0), inf) : *d;
        ps.push_back(profile::negate(capped));
    }
    return PLFunction(cp, std::move(ps));
}

// ---- restriction ----

PLFunction pull_along(const PLFunction& f, const Embedding& emb) {
    if (!same_curve(f.curve(), emb.target)) throw TropError("function does not live on the embedding's target");
    if (f.is_neg_inf()) return PLFunction::neg_inf(emb.source);
    const Curve& s = *emb.source;
    std::vector<EdgeProfile> ps;
    for (std::size_t j = 0; j < s.num_edges(); ++j) {
        const EdgeImage& im = emb.edge_image[j];
        ps.push_back(sample_edge(f, im.edge, im.start, im.reversed ? -1 : 1, s.edge(j).length));
    }
    std::map<std::size_t, Rational> iso;
    for (std::size_t v = 0; v < s.num_vertices(); ++v)
        if (s.incident(v).empty()) iso[v] = eval(f, emb.vertex_image[v]).value();
    return PLFunction(emb.source, std::move(ps), iso);
}

std::vector<PLFunction> restrict_to(const PLFunction& f, const Subgraph& g) {
    if (!same_curve(f.curve(), g.owner())) throw TropError("function and subgraph live on different curves");
    std::vector<PLFunction> out;
    for (std::size_t k = 0; k < g.num_components(); ++k) out.push_back(pull_along(f, component_curve(g, k).embedding));
    return out;
}

// ---- extension ----

namespace {

// Per-edge layout of g along an edge: blocks inside g (with the values of the given parts), in order.
struct Block {
    Rational lo;
    Extended hi;
    EdgeProfile values;  // re-based at lo
};

struct ExtensionPlan {
    Rational base;                          // value outside g
    std::map<std::string, Int> class_slope;  // slope at infinity carried by rays of g, per class
    std::vector<std::vector<Block>> blocks;  // per edge of the owner
    std::map<std::size_t, Rational> vertex_value;  // owner vertices in g
};

ExtensionPlan plan_extension(const Subgraph& g, const std::vector<PLFunction>& parts) {
    const Curve& c = *g.owner();
    if (parts.size() != g.num_components()) throw TropError("extension needs one function per subgraph component");
    ExtensionPlan plan;
    plan.blocks.resize(c.num_edges());
    for (std::size_t k = 0; k < parts.size(); ++k) {
        auto piece = component_curve(g, k);
        const PLFunction& f = parts[k];
        if (!same_curve(f.curve(), piece.curve)) throw TropError("function does not live on the subgraph component");
        if (f.is_neg_inf()) throw TropError("cannot extend the -inf function");
        const Curve& pc = *piece.curve;
        for (std::size_t w = 0; w < pc.num_vertices(); ++w) {
            const PointRef& img = piece.embedding.vertex_image[w];
            if (pc.vertex(w).at_infinity) continue;
            if (img.is_vertex()) plan.vertex_value[img.index] = f.vertex_value(w);
            else if (pc.incident(w).empty())
                plan.blocks[img.index].push_back({img.offset, Extended(img.offset), EdgeProfile{{Rational(0)}, {f.vertex_value(w)}, 0}});
        }
        for (std::size_t j = 0; j < pc.num_edges(); ++j) {
            const EdgeImage& im = piece.embedding.edge_image[j];
            const Extended len = pc.edge(j).length;
            Extended hi = len.finite() ? Extended(Rational(im.start + len.value())) : Extended::pos_inf();
            plan.blocks[im.edge].push_back({im.start, hi, f.profile(j)});
            if (!len.finite()) {
                const std::string& label = pc.ray_class(j);
                Int sigma = f.slope_at_infinity(j);
                auto [it, fresh] = plan.class_slope.emplace(label, sigma);
                if (!fresh && it->second != sigma)
                    throw TropError("function on the subgraph has different slopes on rays of class '" + label + "'");
            }
        }
    }
    plan.base = Rational(0);
    for (const auto& [v, x] : plan.vertex_value) plan.base = std::min(plan.base, x);
    for (auto& bs : plan.blocks) {
        std::sort(bs.begin(), bs.end(), [](const Block& a, const Block& b) { return a.lo < b.lo; });
        for (const auto& b : bs) {
            plan.base = std::min(plan.base, b.values.v.front());
            if (b.hi.finite()) plan.base = std::min(plan.base, b.values.value_at(b.hi.value() - b.lo));
        }
    }
    return plan;
}

// A gap of an edge outside g, with the heights its ends must descend from.
struct Gap {
    std::size_t edge;
    Rational lo;
    Extended hi;
    Rational rise_lo, rise_hi;  // value above base at the ends (0 when the end is not in g)
};

std::vector<Gap> gaps(const Subgraph& g, const ExtensionPlan& plan, std::size_t e) {
    const Curve& c = *g.owner();
    const auto& ed = c.edge(e);
    std::vector<Gap> out;
    auto end_rise = [&](std::size_t v) {
        auto it = plan.vertex_value.find(v);
        return it == plan.vertex_value.end() ? Rational(0) : Rational(it->second - plan.base);
    };
    Rational cur = 0;
    Rational cur_rise = end_rise(ed.u);
    for (const auto& b : plan.blocks[e]) {
        if (cur < b.lo) out.push_back({e, cur, Extended(b.lo), cur_rise, b.values.v.front() - plan.base});
        if (!b.hi.finite()) return out;
        cur = b.hi.value();
        cur_rise = b.values.value_at(cur - b.lo) - plan.base;
    }
    if (ed.length.finite()) {
        if (cur < ed.length.value()) out.push_back({e, cur, ed.length, cur_rise, end_rise(ed.v)});
    } else {
        out.push_back({e, cur, Extended::pos_inf(), cur_rise, Rational(0)});
    }
    return out;
}

}  // namespace

Int min_extension_slope(const Subgraph& g, const std::vector<PLFunction>& parts) {
    ExtensionPlan plan = plan_extension(g, parts);
    Rational need = 1;
    for (std::size_t e = 0; e < g.owner()->num_edges(); ++e)
        for (const auto& gap : gaps(g, plan, e)) {
            if (!gap.hi.finite()) continue;
            need = std::max(need, Rational((gap.rise_lo + gap.rise_hi) / (gap.hi.value() - gap.lo)));
        }
    mpz_class ceil = need.get_num() / need.get_den();
    if (ceil * need.get_den() < need.get_num()) ceil += 1;
    return ceil.get_si();
}

PLFunction extend(const Subgraph& g, const std::vector<PLFunction>& parts, Int s) {
    if (s >= 0) throw TropError("extension slope must be a negative integer");
    const CurvePtr& cp = g.owner();
    const Curve& c = *cp;
    ExtensionPlan plan = plan_extension(g, parts);
    const Rational steep = make_rational(-s);
    std::vector<EdgeProfile> ps;
    for (std::size_t e = 0; e < c.num_edges(); ++e) {
        EdgeProfile p;
        auto add = [&](const Rational& t, const Rational& v) {
            if (!p.t.empty() && p.t.back() == t) return;
            p.t.push_back(t);
            p.v.push_back(v);
        };
        auto gs = gaps(g, plan, e);
        std::size_t gi = 0;
        auto emit_gap = [&](const Gap& gap) {
            Rational d_lo = gap.rise_lo / steep, d_hi = gap.rise_hi / steep;
            if (gap.hi.finite() && d_lo + d_hi > gap.hi.value() - gap.lo)
                throw TropError("extension slope " + std::to_string(s) + " is too shallow on edge '" +
                                c.user_position(e, gap.lo).first + "'; use |s| >= " +
                                std::to_string(min_extension_slope(g, parts)));
            add(gap.lo, plan.base + gap.rise_lo);
            add(gap.lo + d_lo, plan.base);
            if (gap.hi.finite()) {
                add(gap.hi.value() - d_hi, plan.base);
                add(gap.hi.value(), plan.base + gap.rise_hi);
            } else {
                auto it = plan.class_slope.find(c.ray_class(e));
                p.tail = it == plan.class_slope.end() ? 0 : it->second;
            }
        };
        for (const auto& b : plan.blocks[e]) {
            while (gi < gs.size() && gs[gi].lo < b.lo) emit_gap(gs[gi++]);
            for (std::size_t i = 0; i < b.values.t.size(); ++i) add(b.lo + b.values.t[i], b.values.v[i]);
            if (!b.hi.finite()) p.tail = b.values.tail;
            else add(b.hi.value(), b.values.value_at(b.hi.value() - b.lo));
        }
        while (gi < gs.size()) emit_gap(gs[gi++]);
        ps.push_back(std::move(p));
    }
    std::map<std::size_t, Rational> iso;
    for (std::size_t v = 0; v < c.num_vertices(); ++v)
        if (c.incident(v).empty()) {
            auto it = plan.vertex_value.find(v);
            iso[v] = it == plan.vertex_value.end() ? plan.base : it->second;
        }
    return PLFunction(cp, std::move(ps), iso);
}

// ---- parallel rays and pseudodirect tuples ----

ParallelReport respects_parallel(const PLFunction& f) {
    ParallelReport r;
    if (f.is_neg_inf()) return r;
    const Curve& c = *f.curve();
    std::map<std::string, std::size_t> first;
    for (std::size_t e : c.infinite_edges()) {
        auto [it, fresh] = first.emplace(c.ray_class(e), e);
        if (fresh || f.slope_at_infinity(it->second) == f.slope_at_infinity(e)) continue;
        r.ok = false;
        r.label = c.ray_class(e);
        r.edge_a = c.edge(it->second).id;
        r.edge_b = c.edge(e).id;
        r.slope_a = f.slope_at_infinity(it->second);
        r.slope_b = f.slope_at_infinity(e);
        return r;
    }
    return r;
}

PLFunction pseudo_tuple(const CurvePtr& c, const std::vector<PLFunction>& parts) {
    if (parts.size() != c->num_components()) throw TropError("pseudodirect tuple needs one part per component");
    std::size_t zeros = 0;
    for (const auto& p : parts) zeros += p.is_neg_inf();
    if (zeros == parts.size()) return PLFunction::neg_inf(c);
    if (zeros != 0) throw TropError("not an element of the pseudodirect product");
    std::vector<std::optional<EdgeProfile>> ps(c->num_edges());
    std::map<std::size_t, Rational> iso;
    for (std::size_t k = 0; k < parts.size(); ++k) {
        auto piece = curve_component(c, k);
        if (!same_curve(parts[k].curve(), piece.curve))
            throw TropError("part " + std::to_string(k + 1) + " does not live on component " + std::to_string(k + 1));
        for (std::size_t j = 0; j < piece.curve->num_edges(); ++j) ps[piece.embedding.edge_image[j].edge] = parts[k].profile(j);
        for (std::size_t w = 0; w < piece.curve->num_vertices(); ++w)
            if (piece.curve->incident(w).empty()) iso[piece.embedding.vertex_image[w].index] = parts[k].vertex_value(w);
    }
    std::vector<EdgeProfile> out;
    for (auto& p : ps) out.push_back(std::move(*p));
    return PLFunction(c, std::move(out), iso);
}

// ---- gluing ----

std::optional<std::string> glue_mismatch(const PLFunction& h1, const PLFunction& h2, const GlueResult& glued) {
    const Curve& sub = *glued.iota1.source;
    const Curve& c1 = *glued.iota1.target;
    auto name_of = [&](const PointRef& q) { return c1.point_name(map_point(glued.iota1, q)); };
    if (h1.is_neg_inf() || h2.is_neg_inf()) {
        if (h1.is_neg_inf() == h2.is_neg_inf()) return std::nullopt;
        return name_of(PointRef::vertex(0));
    }
    PLFunction p1 = pull_along(h1, glued.iota1), p2 = pull_along(h2, glued.iota2);
    if (p1 == p2) return std::nullopt;
    for (std::size_t w = 0; w < sub.num_vertices(); ++w)
        if (!sub.vertex(w).at_infinity && p1.vertex_value(w) != p2.vertex_value(w)) return name_of(PointRef::vertex(w));
    for (std::size_t j = 0; j < sub.num_edges(); ++j) {
        std::set<Rational> ts(p1.profile(j).t.begin(), p1.profile(j).t.end());
        ts.insert(p2.profile(j).t.begin(), p2.profile(j).t.end());
        if (sub.is_infinite(j)) ts.insert(*ts.rbegin() + 1);
        for (const auto& t : ts)
            if (p1.profile(j).value_at(t) != p2.profile(j).value_at(t)) return name_of(sub.edge_point(j, t));
    }
    return std::nullopt;
}

PLFunction glue_function(const PLFunction& h1, const PLFunction& h2, const GlueResult& glued) {
    if (!same_curve(h1.curve(), glued.iota1.target) || !same_curve(h2.curve(), glued.iota2.target))
        throw TropError("functions do not live on the glued curves");
    if (auto w = glue_mismatch(h1, h2, glued)) throw TropError("functions disagree on the glued subgraph at " + *w);
    if (h1.is_neg_inf()) return PLFunction::neg_inf(glued.glued);
    const Curve& g = *glued.glued;
    std::vector<std::optional<EdgeProfile>> ps(g.num_edges());
    auto fill = [&](const PLFunction& h, const std::vector<std::vector<GlueResult::Piece>>& pieces, std::size_t owned_from) {
        for (std::size_t e = 0; e < pieces.size(); ++e)
            for (const auto& pc : pieces[e])
                if (pc.glued_edge >= owned_from && !ps[pc.glued_edge])
                    ps[pc.glued_edge] = profile::slice(h.profile(e), pc.from, pc.to);
    };
    fill(h1, glued.pieces1, 0);
    fill(h2, glued.pieces2, 0);
    std::map<std::size_t, Rational> iso;
    const Curve& c1 = *glued.iota1.target;
    const Curve& c2 = *glued.iota2.target;
    for (std::size_t v = 0; v < c1.num_vertices(); ++v)
        if (c1.incident(v).empty() && g.incident(glued.vmap1[v]).empty()) iso[glued.vmap1[v]] = h1.vertex_value(v);
    for (std::size_t v = 0; v < c2.num_vertices(); ++v)
        if (c2.incident(v).empty() && g.incident(glued.vmap2[v]).empty()) iso[glued.vmap2[v]] = h2.vertex_value(v);
    std::vector<EdgeProfile> out;
    for (auto& p : ps) out.push_back(std::move(*p));
    return PLFunction(glued.glued, std::move(out), iso);
}

// ---- disconnectivity witness ----

WitnessCheck check_witness(const PLFunction& s, const Rational& a1, const Rational& a2, const Rational& a3) {
    WitnessCheck r;
    if (s.is_neg_inf()) return r;
    const CurvePtr& c = s.curve();
    auto k = [&](const Rational& x) { return PLFunction::constant(c, x); };
    r.below_a3 = s != oplus(s, k(a3));
    r.above_a1 = s != omin(s, k(a1));
    PLFunction lhs = odot(oplus(s, k(a1)), omin(s, k(a2)));
    PLFunction rhs = odot(odot(k(a1 - a2), oplus(s, k(a2))), omin(s, k(a3)));
    r.identity = lhs == rhs;
    return r;
}

std::optional<Witness> disconnect_witness(const CurvePtr& c) {
    if (c->num_components() < 2) return std::nullopt;
    const Rational eps = 1;
    std::vector<PLFunction> parts;
    for (std::size_t k = 0; k < c->num_components(); ++k)
        parts.push_back(PLFunction::constant(curve_component(c, k).curve, k == 0 ? Rational(0) : Rational(4 * eps)));
    Witness w{pseudo_tuple(c, parts), 3 * eps, 2 * eps, eps};
    if (!check_witness(w.s, w.a1, w.a2, w.a3).ok()) throw TropError("internal: constructed witness fails its conditions");
    return w;
}

}  // namespace tropcurve
