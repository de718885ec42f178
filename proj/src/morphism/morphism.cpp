#include "tropcurve/morphism.hpp"

#include <numeric>
#include <set>

#include "tropcurve/errors.hpp"

namespace tropcurve {

namespace {

bool is_loop(const Curve& c, const std::string& id) {
    return !c.find_edge(id) && c.find_edge(id + "#1") && c.find_edge(id + "#2");
}

std::string user_edge(const Curve& c, std::size_t e) { return c.user_position(e, Rational(0)).first; }

}  // namespace

Morphism make_morphism(CurvePtr source, CurvePtr target, const MorphismDescription& d) {
    const Curve& s = *source;
    const Curve& t = *target;
    Morphism m{source, target, std::vector<std::size_t>(s.num_vertices(), SIZE_MAX),
               std::vector<EdgeTarget>(s.num_edges()), std::vector<Int>(s.num_edges(), 0)};
    std::vector<bool> edge_set(s.num_edges(), false);

    for (const auto& [sv, tv] : d.vertex_map) {
        auto v = s.find_vertex(sv);
        if (!v || s.vertex(*v).hidden) throw TropError("vertex map names unknown source vertex '" + sv + "'");
        auto w = t.find_vertex(tv);
        if (!w || t.vertex(*w).hidden) throw TropError("vertex map names unknown target vertex '" + tv + "'");
        m.vertex_map[*v] = *w;
    }
    auto degree_of = [&](const std::string& id) {
        auto it = d.degrees.find(id);
        if (it == d.degrees.end()) throw TropError("no degree given for edge '" + id + "'");
        return it->second;
    };
    auto target_vertex = [&](const std::string& id) {
        auto w = t.find_vertex(id);
        if (!w || t.vertex(*w).hidden) throw TropError("edge map names unknown target vertex '" + id + "'");
        return *w;
    };
    for (const auto& [eid, img] : d.edge_map) {
        Int k = degree_of(eid);
        if (is_loop(s, eid)) {
            std::size_t h1 = s.edge_index(eid + "#1"), h2 = s.edge_index(eid + "#2");
            std::size_t mid = s.edge(h1).v;
            if (img.collapsed) {
                std::size_t w = target_vertex(img.id);
                m.edge_map[h1] = m.edge_map[h2] = EdgeTarget{true, w};
                m.vertex_map[mid] = w;
            } else {
                if (!is_loop(t, img.id)) throw TropError("loop '" + eid + "' must map onto a loop or collapse");
                std::size_t g1 = t.edge_index(img.id + "#1"), g2 = t.edge_index(img.id + "#2");
                m.edge_map[h1] = EdgeTarget{false, g1};
                m.edge_map[h2] = EdgeTarget{false, g2};
                m.vertex_map[mid] = t.edge(g1).v;
            }
            m.deg[h1] = m.deg[h2] = k;
            edge_set[h1] = edge_set[h2] = true;
            continue;
        }
        auto e = s.find_edge(eid);
        if (!e) throw TropError("edge map names unknown source edge '" + eid + "'");
        if (img.collapsed) {
            m.edge_map[*e] = EdgeTarget{true, target_vertex(img.id)};
        } else {
            if (is_loop(t, img.id))
                throw TropError("edge '" + eid + "' maps onto loop '" + img.id + "'; subdivide the loop first");
            auto f = t.find_edge(img.id);
            if (!f) throw TropError("edge map names unknown target edge '" + img.id + "'");
            m.edge_map[*e] = EdgeTarget{false, *f};
        }
        m.deg[*e] = k;
        edge_set[*e] = true;
    }
    for (std::size_t e = 0; e < s.num_edges(); ++e) {
        if (!edge_set[e]) throw TropError("no image given for edge '" + user_edge(s, e) + "'");
        // the synthesized or declared point at infinity follows its ray
        if (s.is_infinite(e) && m.vertex_map[s.edge(e).v] == SIZE_MAX) {
            const EdgeTarget& img = m.edge_map[e];
            m.vertex_map[s.edge(e).v] = img.collapsed ? img.index
                                        : t.is_infinite(img.index) ? t.edge(img.index).v
                                                                   : SIZE_MAX;
        }
    }
    for (std::size_t v = 0; v < s.num_vertices(); ++v)
        if (m.vertex_map[v] == SIZE_MAX) throw TropError("no image given for vertex '" + s.vertex(v).id + "'");
    return m;
}

MorphismDescription describe(const Morphism& m) {
    const Curve& s = *m.source;
    const Curve& t = *m.target;
    MorphismDescription d;
    for (std::size_t v = 0; v < s.num_vertices(); ++v)
        if (!s.vertex(v).hidden) d.vertex_map[s.vertex(v).id] = t.vertex(m.vertex_map[v]).id;
    for (std::size_t e = 0; e < s.num_edges(); ++e) {
        std::string id = user_edge(s, e);
        const EdgeTarget& img = m.edge_map[e];
        d.edge_map[id] = img.collapsed ? MorphismDescription::Image{true, t.vertex(img.index).id}
                                       : MorphismDescription::Image{false, user_edge(t, img.index)};
        d.degrees[id] = m.deg[e];
    }
    return d;
}

Morphism identity_morphism(const CurvePtr& c) {
    Morphism m{c, c, std::vector<std::size_t>(c->num_vertices()), std::vector<EdgeTarget>(c->num_edges()),
               std::vector<Int>(c->num_edges(), 1)};
    std::iota(m.vertex_map.begin(), m.vertex_map.end(), std::size_t{0});
    for (std::size_t e = 0; e < c->num_edges(); ++e) m.edge_map[e] = EdgeTarget{false, e};
    return m;
}

MorphismReport validate_morphism(const Morphism& m) {
    MorphismReport r;
    auto fail = [&](std::string msg) {
        r.ok = false;
        r.violations.push_back(std::move(msg));
    };
    const Curve& s = *m.source;
    const Curve& t = *m.target;
    if (m.vertex_map.size() != s.num_vertices() || m.edge_map.size() != s.num_edges() ||
        m.deg.size() != s.num_edges()) {
        fail("map sizes do not match the source curve");
        return r;
    }
    for (std::size_t v = 0; v < s.num_vertices(); ++v) {
        if (m.vertex_map[v] >= t.num_vertices()) {
            fail("vertex '" + s.vertex(v).id + "' maps outside the target");
            return r;
        }
        if (!s.vertex(v).at_infinity && t.vertex(m.vertex_map[v]).at_infinity)
            fail("finite vertex '" + s.vertex(v).id + "' maps to a point at infinity");
    }
    for (std::size_t e = 0; e < s.num_edges(); ++e) {
        const auto& ed = s.edge(e);
        const EdgeTarget& img = m.edge_map[e];
        std::string name = "edge '" + ed.id + "'";
        std::size_t pu = m.vertex_map[ed.u], pv = m.vertex_map[ed.v];
        if (img.collapsed) {
            if (img.index >= t.num_vertices()) {
                fail(name + " collapses outside the target");
                continue;
            }
            if (m.deg[e] != 0) fail(name + " is collapsed but has degree " + std::to_string(m.deg[e]));
            if (pu != img.index || pv != img.index) fail(name + ": endpoints do not map to the collapse vertex");
            continue;
        }
        if (img.index >= t.num_edges()) {
            fail(name + " maps outside the target");
            continue;
        }
        const auto& fd = t.edge(img.index);
        if (m.deg[e] <= 0) {
            fail(name + " is not collapsed but has degree " + std::to_string(m.deg[e]));
            continue;
        }
        bool fwd = pu == fd.u && pv == fd.v, bwd = pu == fd.v && pv == fd.u;
        if (!fwd && !bwd) fail(name + ": endpoints do not map to the endpoints of '" + fd.id + "'");
        if (s.is_infinite(e)) {
            if (!t.is_infinite(img.index)) fail(name + " is a ray but its image '" + fd.id + "' is finite");
        } else if (t.is_infinite(img.index)) {
            fail(name + " is finite but its image '" + fd.id + "' is a ray");
        } else if (t.length(img.index) != s.length(e) * m.deg[e]) {
            fail(name + ": image length " + to_string(t.length(img.index)) + " differs from degree " +
                 std::to_string(m.deg[e]) + " times length " + to_string(s.length(e)));
        }
    }
    if (!r.ok) return r;
    // parallel rays: per source class all collapsed, or all onto one target class with one degree
    std::map<std::string, std::vector<std::size_t>> classes;
    for (std::size_t e : s.infinite_edges()) classes[s.ray_class(e)].push_back(e);
    for (const auto& [label, rays] : classes) {
        std::set<std::string> images;
        std::set<Int> degs;
        int collapsed = 0;
        for (std::size_t e : rays) {
            if (m.edge_map[e].collapsed) {
                ++collapsed;
                continue;
            }
            images.insert(t.ray_class(m.edge_map[e].index));
            degs.insert(m.deg[e]);
        }
        if (collapsed != 0 && collapsed != static_cast<int>(rays.size()))
            fail("ray class '" + label + "': some rays collapse and others do not");
        else if (images.size() > 1)
            fail("ray class '" + label + "' maps onto several target classes");
        else if (degs.size() > 1)
            fail("ray class '" + label + "' has rays of different degrees");
    }
    return r;
}

bool reversed(const Morphism& m, std::size_t e) {
    const EdgeTarget& img = m.edge_map.at(e);
    if (img.collapsed) return false;
    return m.vertex_map[m.source->edge(e).u] != m.target->edge(img.index).u;
}

PointRef apply(const Morphism& m, const PointRef& p) {
    if (p.is_vertex()) return PointRef::vertex(m.vertex_map.at(p.index));
    const EdgeTarget& img = m.edge_map.at(p.index);
    if (img.collapsed) return PointRef::vertex(img.index);
    Rational t = p.offset * m.deg[p.index];
    if (reversed(m, p.index)) t = m.target->length(img.index) - t;
    return m.target->edge_point(img.index, t);
}

PLFunction pullback(const Morphism& m, const PLFunction& f) {
    auto rep = validate_morphism(m);
    if (!rep.ok) throw TropError("invalid morphism: " + rep.violations.front());
    if (*f.curve() != *m.target) throw TropError("function does not live on the morphism's target");
    if (f.is_neg_inf()) return PLFunction::neg_inf(m.source);
    const Curve& s = *m.source;
    std::vector<EdgeProfile> ps;
    for (std::size_t e = 0; e < s.num_edges(); ++e) {
        const EdgeTarget& img = m.edge_map[e];
        const Extended& len = s.edge(e).length;
        if (img.collapsed) {
            ps.push_back(EdgeProfile::affine(len, f.vertex_value(img.index), 0));
        } else if (reversed(m, e)) {
            ps.push_back(sample_edge(f, img.index, m.target->length(img.index), -m.deg[e], len));
        } else {
            ps.push_back(sample_edge(f, img.index, Rational(0), m.deg[e], len));
        }
    }
    std::map<std::size_t, Rational> isolated;
    for (std::size_t v = 0; v < s.num_vertices(); ++v)
        if (s.incident(v).empty()) isolated[v] = f.vertex_value(m.vertex_map[v]);
    return PLFunction(m.source, std::move(ps), isolated);
}

Morphism compose(const Morphism& first, const Morphism& second) {
    if (*first.target != *second.source) throw TropError("morphisms are not composable");
    Morphism m{first.source, second.target, {}, {}, {}};
    for (std::size_t w : first.vertex_map) m.vertex_map.push_back(second.vertex_map.at(w));
    for (std::size_t e = 0; e < first.edge_map.size(); ++e) {
        const EdgeTarget& a = first.edge_map[e];
        if (a.collapsed) {
            m.edge_map.push_back(EdgeTarget{true, second.vertex_map.at(a.index)});
            m.deg.push_back(0);
            continue;
        }
        const EdgeTarget& b = second.edge_map.at(a.index);
        m.edge_map.push_back(b);
        m.deg.push_back(b.collapsed ? 0 : first.deg[e] * second.deg[a.index]);
    }
    return m;
}

WeightReport weight_check(const Morphism& m) {
    WeightReport r;
    auto rep = validate_morphism(m);
    if (!rep.ok) {
        r.reason = "invalid morphism: " + rep.violations.front();
        return r;
    }
    const Curve& s = *m.source;
    const Curve& t = *m.target;
    std::vector<int> vhits(t.num_vertices(), 0), ehits(t.num_edges(), 0);
    for (std::size_t w : m.vertex_map) ++vhits[w];
    for (const auto& img : m.edge_map) {
        if (img.collapsed) {
            r.reason = "an edge is collapsed";
            return r;
        }
        ++ehits[img.index];
    }
    for (int h : vhits)
        if (h != 1) {
            r.reason = "the vertex map is not bijective";
            return r;
        }
    for (int h : ehits)
        if (h != 1) {
            r.reason = "the edge map is not bijective";
            return r;
        }
    std::map<std::string, std::string> forward, backward;
    for (std::size_t e : s.infinite_edges()) {
        const std::string& a = s.ray_class(e);
        const std::string& b = t.ray_class(m.edge_map[e].index);
        if ((forward.count(a) && forward[a] != b) || (backward.count(b) && backward[b] != a)) {
            r.reason = "ray classes do not correspond";
            return r;
        }
        forward[a] = b;
        backward[b] = a;
    }
    r.is_weight = true;
    for (std::size_t e = 0; e < s.num_edges(); ++e) r.edge_weights[user_edge(t, m.edge_map[e].index)] = m.deg[e];
    return r;
}

Int weight_from_generators(const std::vector<PLFunction>& gens, const std::string& edge) {
    if (gens.empty()) throw TropError("no generators given");
    Int g = 0;
    for (const auto& f : gens) {
        if (f.is_neg_inf()) continue;
        std::optional<Int> slope;
        for (auto [e, shift] : f.curve()->pieces_of(edge)) {
            const auto& p = f.profile(e);
            std::set<Int> s;
            for (std::size_t i = 0; i + 1 < p.t.size(); ++i) s.insert(p.slope_after(p.t[i]));
            if (f.curve()->is_infinite(e)) s.insert(p.tail);
            if (s.size() != 1 || (slope && *slope != *s.begin()))
                throw TropError("a generator has non-constant slope on edge '" + edge + "'; subdivide first");
            slope = *s.begin();
        }
        g = gcd_abs(g, *slope);
    }
    if (g == 0) throw TropError("weight undetermined on level edge");
    return g;
}

}  // namespace tropcurve
