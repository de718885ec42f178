#include "tropcurve/curve.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>

#include "tropcurve/errors.hpp"

namespace tropcurve {

bool operator==(const CurveDescription& a, const CurveDescription& b) {
    if (a.vertices.size() != b.vertices.size() || a.edges.size() != b.edges.size()) return false;
    for (std::size_t i = 0; i < a.vertices.size(); ++i)
        if (a.vertices[i].id != b.vertices[i].id || a.vertices[i].at_infinity != b.vertices[i].at_infinity)
            return false;
    for (std::size_t i = 0; i < a.edges.size(); ++i) {
        const auto &x = a.edges[i], &y = b.edges[i];
        if (x.id != y.id || x.u != y.u || x.v != y.v || x.length != y.length) return false;
    }
    return a.ray_classes == b.ray_classes;
}

bool operator<(const PointRef& a, const PointRef& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.index != b.index) return a.index < b.index;
    return a.offset < b.offset;
}

Curve::Curve(std::vector<Vertex> vertices, std::vector<Edge> edges, std::map<std::string, std::string> ray_classes)
    : vertices_(std::move(vertices)), edges_(std::move(edges)), ray_class_(std::move(ray_classes)) {
    if (vertices_.empty()) throw TropError("empty graph");
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (vertices_[i].id.empty()) throw TropError("empty vertex id");
        if (!vertex_by_id_.emplace(vertices_[i].id, i).second)
            throw TropError("duplicate vertex id '" + vertices_[i].id + "'");
    }
    incident_.assign(vertices_.size(), {});
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        Edge& ed = edges_[e];
        if (ed.id.empty()) throw TropError("empty edge id");
        if (!edge_by_id_.emplace(ed.id, e).second) throw TropError("duplicate edge id '" + ed.id + "'");
        if (ed.u >= vertices_.size() || ed.v >= vertices_.size())
            throw TropError("edge '" + ed.id + "' references a missing vertex");
        if (ed.u == ed.v) throw TropError("edge '" + ed.id + "' is a loop");
        if (ed.length.is_neg_inf() || (ed.length.finite() && ed.length.value() <= 0))
            throw TropError("nonpositive length on edge '" + ed.id + "'");
        bool inf_u = vertices_[ed.u].at_infinity, inf_v = vertices_[ed.v].at_infinity;
        if (ed.length.finite()) {
            if (inf_u || inf_v) throw TropError("finite edge '" + ed.id + "' touches a point at infinity");
        } else {
            if (inf_u == inf_v)
                throw TropError("infinite length on edge '" + ed.id + "' needs exactly one endpoint at infinity");
            if (inf_u) std::swap(ed.u, ed.v);
        }
        incident_[ed.u].push_back(e);
        incident_[ed.v].push_back(e);
    }
    for (std::size_t v = 0; v < vertices_.size(); ++v)
        if (vertices_[v].at_infinity && incident_[v].size() != 1)
            throw TropError("point at infinity '" + vertices_[v].id + "' is not a leaf end");
    for (const auto& [eid, label] : ray_class_) {
        auto it = edge_by_id_.find(eid);
        if (it == edge_by_id_.end()) throw TropError("ray class given for unknown edge '" + eid + "'");
        if (edges_[it->second].length.finite()) throw TropError("ray class given for finite edge '" + eid + "'");
    }
    for (const auto& ed : edges_)
        if (!ed.length.finite() && !ray_class_.count(ed.id))
            throw TropError("ray_class missing on infinite edge '" + ed.id + "'");

    std::vector<std::size_t> parent(vertices_.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& ed : edges_) parent[find(ed.u)] = find(ed.v);
    component_.assign(vertices_.size(), 0);
    std::map<std::size_t, std::size_t> root_to_comp;
    for (std::size_t v = 0; v < vertices_.size(); ++v) {
        auto [it, fresh] = root_to_comp.emplace(find(v), root_to_comp.size());
        component_[v] = it->second;
    }
    num_components_ = root_to_comp.size();
}

std::optional<std::size_t> Curve::find_vertex(std::string_view id) const {
    auto it = vertex_by_id_.find(id);
    if (it == vertex_by_id_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> Curve::find_edge(std::string_view id) const {
    auto it = edge_by_id_.find(id);
    if (it == edge_by_id_.end()) return std::nullopt;
    return it->second;
}

std::size_t Curve::vertex_index(std::string_view id) const {
    if (auto v = find_vertex(id)) return *v;
    throw TropError("no vertex '" + std::string(id) + "' on the curve");
}

std::size_t Curve::edge_index(std::string_view id) const {
    if (auto e = find_edge(id)) return *e;
    throw TropError("no edge '" + std::string(id) + "' on the curve");
}

const std::string& Curve::ray_class(std::size_t e) const {
    auto it = ray_class_.find(edges_.at(e).id);
    if (it == ray_class_.end()) throw TropError("edge '" + edges_[e].id + "' is not a ray");
    return it->second;
}

std::vector<std::size_t> Curve::infinite_edges() const {
    std::vector<std::size_t> out;
    for (std::size_t e = 0; e < edges_.size(); ++e)
        if (is_infinite(e)) out.push_back(e);
    return out;
}

std::size_t Curve::component_of(const PointRef& p) const {
    check_point(p);
    return p.is_vertex() ? component_[p.index] : component_[edges_[p.index].u];
}

std::vector<std::size_t> Curve::component_vertices(std::size_t k) const {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < vertices_.size(); ++v)
        if (component_[v] == k) out.push_back(v);
    return out;
}

std::vector<std::size_t> Curve::component_edges(std::size_t k) const {
    std::vector<std::size_t> out;
    for (std::size_t e = 0; e < edges_.size(); ++e)
        if (component_[edges_[e].u] == k) out.push_back(e);
    return out;
}

PointRef Curve::edge_point(std::size_t e, const Rational& offset) const {
    if (e >= edges_.size()) throw TropError("edge index out of range");
    const Edge& ed = edges_[e];
    if (offset < 0 || (ed.length.finite() && offset > ed.length.value()))
        throw TropError("offset " + to_string(offset) + " is off edge '" + ed.id + "'");
    if (offset == 0) return PointRef::vertex(ed.u);
    if (ed.length.finite() && offset == ed.length.value()) return PointRef::vertex(ed.v);
    return PointRef{PointRef::Kind::OnEdge, e, offset};
}

PointRef Curve::infinity_of(std::size_t e) const {
    if (e >= edges_.size() || !is_infinite(e)) throw TropError("edge has no point at infinity");
    return PointRef::vertex(edges_[e].v);
}

bool Curve::is_infinity(const PointRef& p) const { return p.is_vertex() && vertices_.at(p.index).at_infinity; }

void Curve::check_point(const PointRef& p) const {
    if (p.is_vertex()) {
        if (p.index >= vertices_.size()) throw TropError("point not on curve");
        return;
    }
    if (p.index >= edges_.size()) throw TropError("point not on curve");
    const Edge& ed = edges_[p.index];
    if (p.offset <= 0 || (ed.length.finite() && p.offset >= ed.length.value()))
        throw TropError("point not normalized or not on curve");
}

std::vector<std::pair<std::size_t, Rational>> Curve::pieces_of(std::string_view user_edge_id) const {
    if (auto e = find_edge(user_edge_id)) return {{*e, Rational(0)}};
    std::string id(user_edge_id);
    auto a = find_edge(id + "#1"), b = find_edge(id + "#2");
    if (a && b) {
        const Vertex& mid = vertices_[edges_[*a].v];
        if (mid.hidden && mid.loop_id == id) return {{*a, Rational(0)}, {*b, length(*a)}};
    }
    throw TropError("no edge '" + id + "' on the curve");
}

std::pair<std::string, Rational> Curve::user_position(std::size_t e, const Rational& offset) const {
    const Edge& ed = edges_.at(e);
    for (std::size_t end : {ed.u, ed.v}) {
        const Vertex& w = vertices_[end];
        if (!w.hidden) continue;
        if (ed.id == w.loop_id + "#1") return {w.loop_id, offset};
        if (ed.id == w.loop_id + "#2") return {w.loop_id, length(e) + offset};
    }
    return {ed.id, offset};
}

PointRef Curve::parse_point(std::string_view text) const {
    if (auto v = find_vertex(text)) return PointRef::vertex(*v);
    auto at = text.rfind('@');
    if (at == std::string_view::npos) throw TropError("no point '" + std::string(text) + "' on the curve");
    auto pieces = pieces_of(text.substr(0, at));
    std::string_view off = text.substr(at + 1);
    if (off == "inf") return infinity_of(pieces.back().first);
    Rational t = parse_rational(off);
    for (std::size_t i = pieces.size(); i-- > 0;)
        if (t >= pieces[i].second) return edge_point(pieces[i].first, t - pieces[i].second);
    throw TropError("offset " + to_string(t) + " is off edge '" + std::string(text.substr(0, at)) + "'");
}

std::string Curve::point_name(const PointRef& p) const {
    check_point(p);
    if (p.is_vertex()) {
        const Vertex& w = vertices_[p.index];
        if (!w.hidden) return w.id;
        for (std::size_t e : incident_[p.index]) {
            auto [uid, off] = user_position(e, edges_[e].u == p.index ? Rational(0) : length(e));
            if (uid == w.loop_id) return uid + "@" + to_string(off);
        }
        return w.id;
    }
    auto [uid, off] = user_position(p.index, p.offset);
    return uid + "@" + to_string(off);
}

std::vector<Direction> Curve::directions(const PointRef& p) const {
    check_point(p);
    if (!p.is_vertex()) return {Direction{p.index, false}, Direction{p.index, true}};
    std::vector<Direction> out;
    for (std::size_t e : incident_[p.index]) out.push_back(Direction{e, edges_[e].u == p.index});
    std::sort(out.begin(), out.end(), [&](const Direction& a, const Direction& b) {
        if (edges_[a.edge].id != edges_[b.edge].id) return edges_[a.edge].id < edges_[b.edge].id;
        return a.forward && !b.forward;
    });
    return out;
}

bool operator==(const Curve& a, const Curve& b) {
    return a.vertices_ == b.vertices_ && a.edges_ == b.edges_ && a.ray_class_ == b.ray_class_;
}

std::size_t valence(const Curve& c, const PointRef& p) { return c.valence(p); }

CurvePtr build_curve(const CurveDescription& d) {
    std::vector<Curve::Vertex> vs;
    std::map<std::string, std::size_t> by_id;
    for (const auto& v : d.vertices) {
        if (!by_id.emplace(v.id, vs.size()).second) throw TropError("duplicate vertex id '" + v.id + "'");
        vs.push_back(Curve::Vertex{v.id, v.at_infinity, false, {}});
    }
    auto lookup = [&](const std::string& id, const std::string& eid) {
        auto it = by_id.find(id);
        if (it == by_id.end()) throw TropError("edge '" + eid + "' references unknown vertex '" + id + "'");
        return it->second;
    };
    auto add_vertex = [&](Curve::Vertex v) {
        if (!by_id.emplace(v.id, vs.size()).second) throw TropError("duplicate vertex id '" + v.id + "'");
        vs.push_back(std::move(v));
        return vs.size() - 1;
    };
    std::vector<Curve::Edge> es;
    for (const auto& e : d.edges) {
        if (e.length.is_neg_inf() || (e.length.finite() && e.length.value() <= 0))
            throw TropError("nonpositive length on edge '" + e.id + "'");
        std::size_t u = lookup(e.u, e.id);
        std::size_t v;
        if (e.v) {
            v = lookup(*e.v, e.id);
        } else {
            if (e.length.finite()) throw TropError("edge '" + e.id + "' has no second endpoint");
            v = add_vertex(Curve::Vertex{e.id + "#inf", true, false, {}});
        }
        if (u != v) {
            es.push_back(Curve::Edge{e.id, u, v, e.length});
            continue;
        }
        if (!e.length.finite()) throw TropError("infinite length on loop '" + e.id + "'");
        Rational half = e.length.value() / 2;
        std::size_t mid = add_vertex(Curve::Vertex{e.id + "#mid", false, true, e.id});
        es.push_back(Curve::Edge{e.id + "#1", u, mid, Extended(half)});
        es.push_back(Curve::Edge{e.id + "#2", mid, u, Extended(half)});
    }
    return std::make_shared<const Curve>(std::move(vs), std::move(es), d.ray_classes);
}

CurveDescription describe(const Curve& c) {
    CurveDescription d;
    std::set<std::size_t> rejoined;  // hidden vertices whose loop is written back
    for (std::size_t v = 0; v < c.num_vertices(); ++v) {
        const auto& w = c.vertex(v);
        if (!w.hidden || c.incident(v).size() != 2) continue;
        auto a = c.find_edge(w.loop_id + "#1"), b = c.find_edge(w.loop_id + "#2");
        if (!a || !b) continue;
        const auto &ea = c.edge(*a), &eb = c.edge(*b);
        if (ea.v == v && eb.u == v && ea.u == eb.v && ea.length == eb.length) rejoined.insert(v);
    }
    for (std::size_t v = 0; v < c.num_vertices(); ++v)
        if (!rejoined.count(v)) d.vertices.push_back({c.vertex(v).id, c.vertex(v).at_infinity});
    for (std::size_t e = 0; e < c.num_edges(); ++e) {
        const auto& ed = c.edge(e);
        std::size_t mid = rejoined.count(ed.v) ? ed.v : rejoined.count(ed.u) ? ed.u : c.num_vertices();
        if (mid == c.num_vertices()) {
            d.edges.push_back({ed.id, c.vertex(ed.u).id, c.vertex(ed.v).id, ed.length});
            continue;
        }
        const std::string& loop = c.vertex(mid).loop_id;
        if (ed.id != loop + "#1") continue;
        d.edges.push_back({loop, c.vertex(ed.u).id, c.vertex(ed.u).id, Extended(Rational(2 * c.length(e)))});
    }
    d.ray_classes = c.ray_classes();
    return d;
}

std::vector<Extended> distances_from(const Curve& c, const PointRef& p) {
    c.check_point(p);
    const std::size_t n = c.num_vertices();
    std::vector<Extended> dist(n, Extended::pos_inf());
    using Item = std::pair<Rational, std::size_t>;
    auto cmp = [](const Item& a, const Item& b) { return a.first > b.first; };
    std::priority_queue<Item, std::vector<Item>, decltype(cmp)> pq(cmp);
    auto seed = [&](std::size_t v, const Rational& d) {
        if (c.vertex(v).at_infinity) return;
        if (!dist[v].finite() || d < dist[v].value()) {
            dist[v] = d;
            pq.push({d, v});
        }
    };
    if (p.is_vertex()) {
        dist[p.index] = Rational(0);
        if (!c.vertex(p.index).at_infinity) pq.push({Rational(0), p.index});
    } else {
        const auto& ed = c.edge(p.index);
        seed(ed.u, p.offset);
        if (ed.length.finite()) seed(ed.v, ed.length.value() - p.offset);
    }
    while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (dist[v].value() < d) continue;
        for (std::size_t e : c.incident(v)) {
            if (c.is_infinite(e)) continue;
            const auto& ed = c.edge(e);
            seed(ed.u == v ? ed.v : ed.u, d + ed.length.value());
        }
    }
    return dist;
}

Distance distance(const Curve& c, const PointRef& p, const PointRef& q) {
    c.check_point(p);
    c.check_point(q);
    if (p == q) return Distance{Rational(0), false};
    if (c.component_of(p) != c.component_of(q)) return Distance{Extended::pos_inf(), true};
    if (c.is_infinity(p) || c.is_infinity(q)) return Distance{Extended::pos_inf(), false};
    auto d = distances_from(c, p);
    if (q.is_vertex()) return Distance{d[q.index], false};
    const auto& ed = c.edge(q.index);
    Extended best = d[ed.u] + Extended(q.offset);
    if (ed.length.finite()) best = std::min(best, d[ed.v] + Extended(Rational(ed.length.value() - q.offset)));
    if (!p.is_vertex() && p.index == q.index) best = std::min(best, Extended(Rational(abs(p.offset - q.offset))));
    return Distance{best, false};
}

CurvePtr canonical_model(const Curve& c) {
    if (c.num_components() != 1) throw TropError("canonical model needs a connected curve");
    CurveDescription d = describe(c);
    std::map<std::string, int> val;
    std::map<std::string, bool> at_inf;
    for (const auto& v : d.vertices) {
        val[v.id] = 0;
        at_inf[v.id] = v.at_infinity;
    }
    for (const auto& e : d.edges) {
        ++val[e.u];
        ++val[*e.v];
    }
    std::size_t inf_count = 0;
    bool finite_all_two = true;
    std::optional<std::string> least_finite;
    for (const auto& [id, k] : val) {
        if (at_inf[id]) {
            ++inf_count;
            continue;
        }
        if (!least_finite) least_finite = id;  // map order is lexicographic
        if (k != 2) finite_all_two = false;
    }
    std::optional<std::string> keep;
    if (finite_all_two && (inf_count == 0 || inf_count == 2)) keep = least_finite;

    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& [id, k] : val) {
            if (k != 2 || at_inf[id] || id == keep) continue;
            std::vector<std::size_t> ends;
            for (std::size_t i = 0; i < d.edges.size(); ++i) {
                if (d.edges[i].u == id) ends.push_back(i);
                if (*d.edges[i].v == id) ends.push_back(i);
            }
            if (ends[0] == ends[1]) continue;  // lone loop: the circle's kept vertex
            auto e1 = d.edges[ends[0]], e2 = d.edges[ends[1]];
            std::string a = e1.u == id ? *e1.v : e1.u;
            std::string b = e2.u == id ? *e2.v : e2.u;
            CurveDescription::Edge merged;
            merged.id = std::min(e1.id, e2.id);
            merged.length = e1.length + e2.length;
            if (!e1.length.finite()) std::swap(a, b);
            merged.u = a;  // when a ray is involved, b is its point at infinity
            merged.v = b;
            std::string cls;
            if (!e1.length.finite()) cls = d.ray_classes.at(e1.id);
            if (!e2.length.finite()) cls = d.ray_classes.at(e2.id);
            d.ray_classes.erase(e1.id);
            d.ray_classes.erase(e2.id);
            if (!merged.length.finite()) d.ray_classes[merged.id] = cls;
            d.edges.erase(d.edges.begin() + static_cast<std::ptrdiff_t>(std::max(ends[0], ends[1])));
            d.edges.erase(d.edges.begin() + static_cast<std::ptrdiff_t>(std::min(ends[0], ends[1])));
            d.edges.push_back(merged);
            d.vertices.erase(std::find_if(d.vertices.begin(), d.vertices.end(),
                                          [&](const auto& v) { return v.id == id; }));
            val.erase(id);
            changed = true;
            break;
        }
    }
    std::sort(d.edges.begin(), d.edges.end(), [](const auto& x, const auto& y) { return x.id < y.id; });
    return build_curve(d);
}

CurvePtr disjoint_union(const std::vector<CurvePtr>& cs,
                        const std::map<std::pair<std::size_t, std::string>, std::string>& shared_classes) {
    if (cs.size() < 2) throw TropError("disjoint union needs at least two curves");
    CurveDescription out;
    for (std::size_t k = 0; k < cs.size(); ++k) {
        std::string pre = std::to_string(k + 1) + ":";
        CurveDescription d = describe(*cs[k]);
        for (const auto& v : d.vertices) out.vertices.push_back({pre + v.id, v.at_infinity});
        for (const auto& e : d.edges) out.edges.push_back({pre + e.id, pre + e.u, pre + *e.v, e.length});
        for (const auto& [eid, label] : d.ray_classes) {
            auto it = shared_classes.find({k + 1, label});
            out.ray_classes[pre + eid] = it != shared_classes.end() ? it->second : pre + label;
        }
    }
    return build_curve(out);
}

}  // namespace tropcurve
