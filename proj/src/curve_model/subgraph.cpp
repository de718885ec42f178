#include "tropcurve/subgraph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <set>

#include "tropcurve/errors.hpp"

namespace tropcurve {

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

Extended edge_end(const Curve& c, std::size_t e) { return c.edge(e).length; }

// A loop midpoint turned into an ordinary vertex, named by its position on the loop.
Curve::Vertex plain_vertex(const Curve& c, std::size_t v) {
    return Curve::Vertex{c.point_name(PointRef::vertex(v)), c.vertex(v).at_infinity, false, {}};
}

}  // namespace

// ---- embeddings ---------------------------------------------------------------

PointRef map_point(const Embedding& emb, const PointRef& p) {
    emb.source->check_point(p);
    if (p.is_vertex()) return emb.vertex_image.at(p.index);
    const EdgeImage& im = emb.edge_image.at(p.index);
    return emb.target->edge_point(im.edge, im.reversed ? Rational(im.start - p.offset) : Rational(im.start + p.offset));
}

void validate_embedding(const Embedding& emb) {
    const Curve& s = *emb.source;
    const Curve& t = *emb.target;
    if (emb.vertex_image.size() != s.num_vertices() || emb.edge_image.size() != s.num_edges())
        throw TropError("embedding does not cover the glued curve");
    for (std::size_t v = 0; v < s.num_vertices(); ++v) {
        t.check_point(emb.vertex_image[v]);
        if (s.vertex(v).at_infinity != t.is_infinity(emb.vertex_image[v]))
            throw TropError("embedding sends '" + s.vertex(v).id + "' across the infinity set");
    }
    std::map<std::size_t, std::vector<std::pair<Rational, Extended>>> used;
    for (std::size_t f = 0; f < s.num_edges(); ++f) {
        const auto& sf = s.edge(f);
        const EdgeImage& im = emb.edge_image[f];
        if (im.edge >= t.num_edges()) throw TropError("embedding references a missing edge");
        const auto& te = t.edge(im.edge);
        auto fail = [&](const std::string& why) {
            return TropError("edge '" + sf.id + "' is not embedded isometrically into '" + te.id + "': " + why);
        };
        if (sf.length.finite()) {
            Rational end = im.reversed ? Rational(im.start - sf.length.value()) : Rational(im.start + sf.length.value());
            Rational lo = std::min(im.start, end), hi = std::max(im.start, end);
            if (lo < 0 || (te.length.finite() && hi > te.length.value())) throw fail("image leaves the edge");
            if (t.edge_point(im.edge, im.start) != emb.vertex_image[sf.u] ||
                t.edge_point(im.edge, end) != emb.vertex_image[sf.v])
                throw fail("endpoints do not match the vertex images");
            used[im.edge].push_back({lo, Extended(hi)});
        } else {
            if (te.length.finite() || im.reversed) throw fail("a ray must run along a ray toward infinity");
            if (im.start < 0) throw fail("image leaves the edge");
            if (t.edge_point(im.edge, im.start) != emb.vertex_image[sf.u] ||
                t.infinity_of(im.edge) != emb.vertex_image[sf.v])
                throw fail("endpoints do not match the vertex images");
            used[im.edge].push_back({im.start, Extended::pos_inf()});
        }
    }
    std::set<PointRef> seen;
    for (const auto& p : emb.vertex_image)
        if (!seen.insert(p).second) throw TropError("embedding is not injective on vertices");
    for (auto& [e, spans] : used) {
        std::sort(spans.begin(), spans.end());
        for (std::size_t i = 0; i + 1 < spans.size(); ++i)
            if (Extended(spans[i + 1].first) < spans[i].second)
                throw TropError("embedding images overlap on edge '" + t.edge(e).id + "'");
        for (const auto& p : emb.vertex_image)
            if (!p.is_vertex() && p.index == e)
                for (const auto& sp : spans)
                    if (sp.first < p.offset && Extended(p.offset) < sp.second)
                        throw TropError("embedding is not injective on edge '" + t.edge(e).id + "'");
    }
}

// ---- subgraphs ----------------------------------------------------------------

Subgraph::Subgraph(CurvePtr owner, std::vector<bool> vertex_in, std::vector<std::vector<SubInterval>> intervals)
    : owner_(std::move(owner)), vertex_in_(std::move(vertex_in)), intervals_(std::move(intervals)) {
    const Curve& c = *owner_;
    const std::size_t nv = c.num_vertices();
    std::vector<std::pair<std::size_t, std::size_t>> interval_nodes;  // (edge, index)
    for (std::size_t e = 0; e < intervals_.size(); ++e)
        for (std::size_t i = 0; i < intervals_[e].size(); ++i) interval_nodes.push_back({e, i});
    UnionFind uf(nv + interval_nodes.size());
    for (std::size_t n = 0; n < interval_nodes.size(); ++n) {
        auto [e, i] = interval_nodes[n];
        const SubInterval& iv = intervals_[e][i];
        if (iv.a == 0) uf.unite(nv + n, c.edge(e).u);
        if (iv.b == edge_end(c, e)) uf.unite(nv + n, c.edge(e).v);
    }
    std::map<std::size_t, std::size_t> comp_of_root;
    auto comp = [&](std::size_t node) -> Component& {
        auto [it, fresh] = comp_of_root.emplace(uf.find(node), components_.size());
        if (fresh) components_.emplace_back();
        return components_[it->second];
    };
    for (std::size_t v = 0; v < nv; ++v)
        if (vertex_in_[v]) comp(v).vertices.push_back(v);
    for (std::size_t n = 0; n < interval_nodes.size(); ++n) {
        auto [e, i] = interval_nodes[n];
        comp(nv + n).pieces.push_back({e, intervals_[e][i]});
    }
    for (const auto& k : components_)
        if (k.pieces.empty() && k.vertices.size() == 1 && c.vertex(k.vertices[0]).at_infinity)
            throw TropError("subgraph component consisting of only the point at infinity '" +
                            c.vertex(k.vertices[0]).id + "'");
}

bool Subgraph::contains(const PointRef& p) const {
    owner_->check_point(p);
    if (p.is_vertex()) return vertex_in_[p.index];
    for (const auto& iv : intervals_[p.index])
        if (iv.a <= p.offset && Extended(p.offset) <= iv.b) return true;
    return false;
}

bool operator==(const Subgraph& a, const Subgraph& b) {
    return (a.owner_ == b.owner_ || *a.owner_ == *b.owner_) && a.vertex_in_ == b.vertex_in_ &&
           a.intervals_ == b.intervals_;
}

Subgraph make_subgraph(const CurvePtr& cp, const SubgraphSpec& spec) {
    const Curve& c = *cp;
    std::vector<bool> vin(c.num_vertices(), false);
    std::vector<std::vector<SubInterval>> raw(c.num_edges());
    auto add = [&](std::size_t e, const Rational& a, const Extended& b) {
        const Extended len = c.edge(e).length;
        if (a < 0 || Extended(a) > b || b > len || (!b.finite() && len.finite()))
            throw TropError("invalid interval [" + to_string(a) + "," + b.str() + "] on edge '" + c.edge(e).id + "'");
        raw[e].push_back({a, b});
    };
    auto add_user = [&](const std::string& eid, const Rational& a, const Extended& b) {
        auto pieces = c.pieces_of(eid);
        if (pieces.size() == 1) return add(pieces[0].first, a, b);
        const Rational total = c.length(pieces[0].first) + c.length(pieces[1].first);
        if (a < 0 || Extended(a) > b || b > Extended(total))
            throw TropError("invalid interval [" + to_string(a) + "," + b.str() + "] on loop '" + eid + "'");
        for (auto [e, shift] : pieces) {
            Rational lo = std::max(a, shift), hi = std::min<Rational>(b.value(), shift + c.length(e));
            if (lo <= hi) add(e, lo - shift, Extended(Rational(hi - shift)));
        }
    };
    auto user_length = [&](const std::string& eid) {
        Extended total = Rational(0);
        for (auto [e, s] : c.pieces_of(eid)) total = total + c.edge(e).length;
        return total;
    };
    for (const auto& name : spec.points) {
        PointRef p = c.parse_point(name);
        if (p.is_vertex()) vin[p.index] = true;
        else raw[p.index].push_back({p.offset, Extended(p.offset)});
    }
    for (const auto& eid : spec.edges) add_user(eid, Rational(0), user_length(eid));
    for (const auto& iv : spec.intervals) add_user(iv.edge, iv.a, iv.b);

    std::vector<std::vector<SubInterval>> merged(c.num_edges());
    for (std::size_t e = 0; e < c.num_edges(); ++e) {
        auto& r = raw[e];
        std::sort(r.begin(), r.end(), [](const SubInterval& x, const SubInterval& y) {
            return x.a < y.a || (x.a == y.a && x.b < y.b);
        });
        std::vector<SubInterval> out;
        for (const auto& iv : r) {
            if (!out.empty() && Extended(iv.a) <= out.back().b) {
                out.back().b = std::max(out.back().b, iv.b);
            } else {
                out.push_back(iv);
            }
        }
        const Extended len = c.edge(e).length;
        for (const auto& iv : out) {
            if (iv.a == 0) vin[c.edge(e).u] = true;
            if (iv.b == len) vin[c.edge(e).v] = true;
            bool degenerate_end = Extended(iv.a) == iv.b && (iv.a == 0 || iv.b == len);
            if (!degenerate_end) merged[e].push_back(iv);
        }
    }
    return Subgraph(cp, std::move(vin), std::move(merged));
}

Subgraph whole_curve(const CurvePtr& c) {
    std::vector<std::vector<SubInterval>> iv(c->num_edges());
    for (std::size_t e = 0; e < c->num_edges(); ++e) iv[e].push_back({Rational(0), c->edge(e).length});
    return Subgraph(c, std::vector<bool>(c->num_vertices(), true), std::move(iv));
}

std::vector<Extended> subgraph_vertex_distances(const Subgraph& g) {
    const Curve& c = *g.owner();
    std::vector<Extended> dist(c.num_vertices(), Extended::pos_inf());
    using Item = std::pair<Rational, std::size_t>;
    auto cmp = [](const Item& a, const Item& b) { return a.first > b.first; };
    std::priority_queue<Item, std::vector<Item>, decltype(cmp)> pq(cmp);
    auto seed = [&](std::size_t v, const Rational& d) {
        if (c.vertex(v).at_infinity) {
            if (d == 0) dist[v] = Rational(0);
            return;
        }
        if (!dist[v].finite() || d < dist[v].value()) {
            dist[v] = d;
            pq.push({d, v});
        }
    };
    for (std::size_t v = 0; v < c.num_vertices(); ++v)
        if (g.vertex_in()[v]) seed(v, Rational(0));
    for (std::size_t e = 0; e < c.num_edges(); ++e)
        for (const auto& iv : g.intervals()[e]) {
            seed(c.edge(e).u, iv.a);
            if (iv.b.finite() && c.edge(e).length.finite()) seed(c.edge(e).v, c.length(e) - iv.b.value());
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

Extended distance_to_subgraph(const Subgraph& g, const PointRef& p) {
    const Curve& c = *g.owner();
    if (g.contains(p)) return Rational(0);
    if (c.is_infinity(p)) return Extended::pos_inf();
    auto d = subgraph_vertex_distances(g);
    if (p.is_vertex()) return d[p.index];
    const auto& ed = c.edge(p.index);
    Extended best = d[ed.u] + Extended(p.offset);
    if (ed.length.finite()) best = std::min(best, d[ed.v] + Extended(Rational(ed.length.value() - p.offset)));
    for (const auto& iv : g.intervals()[p.index]) {
        if (p.offset < iv.a) best = std::min(best, Extended(Rational(iv.a - p.offset)));
        if (iv.b < Extended(p.offset)) best = std::min(best, Extended(Rational(p.offset - iv.b.value())));
    }
    return best;
}

namespace {

std::string span_id(const Curve& c, std::size_t e, const Rational& a, const Extended& b) {
    auto [uid, ua] = c.user_position(e, a);
    std::string hi = b.finite() ? to_string(c.user_position(e, b.value()).second) : "inf";
    return uid + "[" + to_string(ua) + "," + hi + "]";
}

}  // namespace

SubgraphPiece component_curve(const Subgraph& g, std::size_t k) {
    const Curve& c = *g.owner();
    const auto& comp = g.components().at(k);
    std::vector<Curve::Vertex> vs;
    std::vector<PointRef> images;
    std::map<PointRef, std::size_t> index;
    auto node = [&](const PointRef& p) {
        auto it = index.find(p);
        if (it != index.end()) return it->second;
        if (p.is_vertex()) vs.push_back(c.vertex(p.index));
        else vs.push_back(Curve::Vertex{c.point_name(p), false, false, {}});
        images.push_back(p);
        index.emplace(p, vs.size() - 1);
        return vs.size() - 1;
    };
    for (std::size_t v : comp.vertices) node(PointRef::vertex(v));
    std::vector<Curve::Edge> es;
    std::vector<EdgeImage> eimg;
    std::map<std::string, std::string> classes;
    for (const auto& [e, iv] : comp.pieces) {
        const auto& ed = c.edge(e);
        std::size_t a = node(c.edge_point(e, iv.a));
        if (Extended(iv.a) == iv.b) continue;
        std::size_t b = node(iv.b.finite() ? c.edge_point(e, iv.b.value()) : c.infinity_of(e));
        bool whole = iv.a == 0 && iv.b == ed.length;
        std::string id = whole ? ed.id : span_id(c, e, iv.a, iv.b);
        Extended len = iv.b.finite() ? Extended(Rational(iv.b.value() - iv.a)) : Extended::pos_inf();
        es.push_back(Curve::Edge{id, a, b, len});
        eimg.push_back(EdgeImage{e, iv.a, false});
        if (!iv.b.finite()) classes[id] = c.ray_class(e);
    }
    // a loop midpoint stays hidden only while both loop halves are present whole
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (!vs[i].hidden) continue;
        int halves = 0;
        for (const auto& ed : es) halves += ed.id == vs[i].loop_id + "#1" || ed.id == vs[i].loop_id + "#2";
        if (halves != 2) vs[i] = plain_vertex(c, images[i].index);
    }
    SubgraphPiece out;
    out.curve = std::make_shared<const Curve>(std::move(vs), std::move(es), std::move(classes));
    out.embedding = Embedding{out.curve, g.owner(), std::move(images), std::move(eimg)};
    return out;
}

SubgraphPiece curve_component(const CurvePtr& c, std::size_t k) {
    if (k >= c->num_components()) throw TropError("component index out of range");
    std::vector<bool> vin(c->num_vertices(), false);
    std::vector<std::vector<SubInterval>> iv(c->num_edges());
    for (std::size_t v : c->component_vertices(k)) vin[v] = true;
    for (std::size_t e : c->component_edges(k)) iv[e].push_back({Rational(0), c->edge(e).length});
    Subgraph g(c, std::move(vin), std::move(iv));
    return component_curve(g, 0);
}

// ---- gluing ---------------------------------------------------------------------

namespace {

struct Refined {
    // per original edge: cut offsets including 0 and the end
    std::vector<std::vector<Extended>> cuts;
    // node ids: original vertices first, then cut points
    std::vector<Curve::Vertex> nodes;
    std::map<PointRef, std::size_t> node_of;
    // per original edge, per piece: (node a, node b)
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> piece_nodes;
    std::vector<std::vector<std::string>> piece_ids;
};

Refined refine(const Curve& c, const Embedding& emb, const std::string& pre) {
    Refined r;
    r.cuts.resize(c.num_edges());
    std::vector<std::set<Rational>> extra(c.num_edges());
    std::set<PointRef> images(emb.vertex_image.begin(), emb.vertex_image.end());
    for (const auto& p : images)
        if (!p.is_vertex()) extra[p.index].insert(p.offset);
    for (std::size_t v = 0; v < c.num_vertices(); ++v) {
        Curve::Vertex w = c.vertex(v);
        if (w.hidden) {
            bool cut = images.count(PointRef::vertex(v)) > 0;
            for (std::size_t e : c.incident(v)) cut = cut || !extra[e].empty();
            if (cut) w = plain_vertex(c, v);
            else w.loop_id = pre + w.loop_id;
        }
        w.id = pre + w.id;
        r.nodes.push_back(w);
        r.node_of[PointRef::vertex(v)] = v;
    }
    r.piece_nodes.resize(c.num_edges());
    r.piece_ids.resize(c.num_edges());
    for (std::size_t e = 0; e < c.num_edges(); ++e) {
        const auto& ed = c.edge(e);
        r.cuts[e].push_back(Rational(0));
        for (const auto& t : extra[e]) {
            r.cuts[e].push_back(t);
            PointRef p = c.edge_point(e, t);
            r.node_of[p] = r.nodes.size();
            r.nodes.push_back(Curve::Vertex{pre + c.point_name(p), false, false, {}});
        }
        r.cuts[e].push_back(ed.length);
        for (std::size_t j = 0; j + 1 < r.cuts[e].size(); ++j) {
            const Extended &a = r.cuts[e][j], &b = r.cuts[e][j + 1];
            std::size_t na = r.node_of.at(c.edge_point(e, a.value()));
            std::size_t nb = r.node_of.at(b.finite() ? c.edge_point(e, b.value()) : c.infinity_of(e));
            r.piece_nodes[e].push_back({na, nb});
            r.piece_ids[e].push_back(extra[e].empty() ? pre + ed.id : pre + span_id(c, e, a.value(), b));
        }
    }
    return r;
}

std::size_t piece_containing(const std::vector<Extended>& cuts, const Rational& lo) {
    for (std::size_t j = 0; j + 1 < cuts.size(); ++j)
        if (cuts[j] == Extended(lo)) return j;
    throw TropError("internal: embedding image does not start at a cut");
}

PointRef map_side(const Curve& orig, const Curve& glued, const std::vector<std::vector<GlueResult::Piece>>& pieces,
                  const std::vector<std::size_t>& vmap, const PointRef& p) {
    orig.check_point(p);
    if (p.is_vertex()) return PointRef::vertex(vmap[p.index]);
    for (const auto& pc : pieces[p.index])
        if (pc.from <= p.offset && Extended(p.offset) <= pc.to)
            return glued.edge_point(pc.glued_edge, pc.alpha + Rational(pc.sigma) * (p.offset - pc.from));
    throw TropError("internal: point outside every piece");
}

}  // namespace

PointRef GlueResult::map1(const PointRef& p) const { return map_side(*iota1.target, *glued, pieces1, vmap1, p); }
PointRef GlueResult::map2(const PointRef& p) const { return map_side(*iota2.target, *glued, pieces2, vmap2, p); }

GlueResult glue(const CurvePtr& c1, const CurvePtr& c2, const Embedding& e1, const Embedding& e2) {
    if (e1.target != c1 || e2.target != c2) throw TropError("embeddings do not land in the curves being glued");
    if (!(e1.source == e2.source || *e1.source == *e2.source))
        throw TropError("embeddings of mismatched subgraphs");
    validate_embedding(e1);
    validate_embedding(e2);
    const Curve& sub = *e1.source;

    Refined r1 = refine(*c1, e1, "1:"), r2 = refine(*c2, e2, "2:");
    const std::size_t n1 = r1.nodes.size();
    UnionFind uf(n1 + r2.nodes.size());
    for (std::size_t w = 0; w < sub.num_vertices(); ++w)
        uf.unite(r1.node_of.at(e1.vertex_image[w]), n1 + r2.node_of.at(e2.vertex_image[w]));

    // side-2 pieces identified with side-1 pieces: (edge2, piece2) -> (edge1, piece1, alpha, sigma)
    struct Ident {
        std::size_t e1, j1;
        Rational alpha;
        int sigma;
    };
    std::map<std::pair<std::size_t, std::size_t>, Ident> ident;
    std::vector<std::pair<std::string, std::string>> class_pairs;
    for (std::size_t f = 0; f < sub.num_edges(); ++f) {
        const EdgeImage &a = e1.edge_image[f], &b = e2.edge_image[f];
        Extended len = sub.edge(f).length;
        auto lo = [&](const EdgeImage& im) {
            return im.reversed ? Rational(im.start - len.value()) : im.start;
        };
        std::size_t j1 = piece_containing(r1.cuts[a.edge], lo(a));
        std::size_t j2 = piece_containing(r2.cuts[b.edge], lo(b));
        int s1 = a.reversed ? -1 : 1, s2 = b.reversed ? -1 : 1;
        Rational c1j = r1.cuts[a.edge][j1].value(), c2j = r2.cuts[b.edge][j2].value();
        Rational alpha = a.start - c1j + Rational(s1 * s2) * (c2j - b.start);
        ident[{b.edge, j2}] = Ident{a.edge, j1, alpha, s1 * s2};
        if (!len.finite()) class_pairs.push_back({"1:" + c1->ray_class(a.edge), "2:" + c2->ray_class(b.edge)});
    }

    // glued vertices: one per class, side-1 representative preferred (smallest node index)
    std::map<std::size_t, std::vector<std::size_t>> classes;
    for (std::size_t n = 0; n < uf.parent.size(); ++n) classes[uf.find(n)].push_back(n);
    std::vector<Curve::Vertex> vs;
    std::vector<std::size_t> node_to_glued(uf.parent.size());
    for (const auto& [root, members] : classes) {
        auto node = [&](std::size_t n) -> const Curve::Vertex& { return n < n1 ? r1.nodes[n] : r2.nodes[n - n1]; };
        Curve::Vertex w = node(members.front());
        for (auto m : members) {
            if (node(m).at_infinity != w.at_infinity) throw TropError("gluing mixes finite and infinite points");
            node_to_glued[m] = vs.size();
        }
        vs.push_back(w);
    }
    // vertex order: follow the node order so side-1 ids come first
    std::vector<std::size_t> order(vs.size());
    {
        std::vector<std::size_t> first(vs.size(), uf.parent.size());
        for (std::size_t n = 0; n < uf.parent.size(); ++n)
            first[node_to_glued[n]] = std::min(first[node_to_glued[n]], n);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](auto x, auto y) { return first[x] < first[y]; });
        std::vector<std::size_t> pos(vs.size());
        std::vector<Curve::Vertex> sorted;
        for (std::size_t i = 0; i < order.size(); ++i) {
            pos[order[i]] = i;
            sorted.push_back(vs[order[i]]);
        }
        vs = std::move(sorted);
        for (auto& g : node_to_glued) g = pos[g];
    }

    GlueResult out;
    out.iota1 = e1;
    out.iota2 = e2;
    std::vector<Curve::Edge> es;
    std::map<std::string, std::string> ray_classes;
    std::vector<std::vector<std::size_t>> glued_of1(c1->num_edges());
    out.pieces1.resize(c1->num_edges());
    out.pieces2.resize(c2->num_edges());
    for (std::size_t e = 0; e < c1->num_edges(); ++e)
        for (std::size_t j = 0; j < r1.piece_nodes[e].size(); ++j) {
            auto [a, b] = r1.piece_nodes[e][j];
            const Extended &lo = r1.cuts[e][j], &hi = r1.cuts[e][j + 1];
            Extended len = hi.finite() ? Extended(Rational(hi.value() - lo.value())) : Extended::pos_inf();
            glued_of1[e].push_back(es.size());
            out.pieces1[e].push_back({lo.value(), hi, es.size(), Rational(0), 1});
            es.push_back(Curve::Edge{r1.piece_ids[e][j], node_to_glued[a], node_to_glued[b], len});
            if (!len.finite()) ray_classes[es.back().id] = "1:" + c1->ray_class(e);
        }
    for (std::size_t e = 0; e < c2->num_edges(); ++e)
        for (std::size_t j = 0; j < r2.piece_nodes[e].size(); ++j) {
            const Extended &lo = r2.cuts[e][j], &hi = r2.cuts[e][j + 1];
            auto it = ident.find({e, j});
            if (it != ident.end()) {
                const Ident& id = it->second;
                out.pieces2[e].push_back({lo.value(), hi, glued_of1[id.e1][id.j1], id.alpha, id.sigma});
                continue;
            }
            auto [a, b] = r2.piece_nodes[e][j];
            Extended len = hi.finite() ? Extended(Rational(hi.value() - lo.value())) : Extended::pos_inf();
            out.pieces2[e].push_back({lo.value(), hi, es.size(), Rational(0), 1});
            es.push_back(Curve::Edge{r2.piece_ids[e][j], node_to_glued[n1 + a], node_to_glued[n1 + b], len});
            if (!len.finite()) ray_classes[es.back().id] = "2:" + c2->ray_class(e);
        }

    // merge identified ray classes; the least label names the merged class
    std::map<std::string, std::string> parent;
    std::function<std::string(const std::string&)> root = [&](const std::string& x) -> std::string {
        auto it = parent.find(x);
        if (it == parent.end() || it->second == x) return x;
        return it->second = root(it->second);
    };
    for (auto& [x, y] : class_pairs) {
        std::string a = root(x), b = root(y);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    for (auto& [eid, label] : ray_classes) label = root(label);

    out.vmap1.resize(c1->num_vertices());
    out.vmap2.resize(c2->num_vertices());
    for (std::size_t v = 0; v < c1->num_vertices(); ++v) out.vmap1[v] = node_to_glued[v];
    for (std::size_t v = 0; v < c2->num_vertices(); ++v) out.vmap2[v] = node_to_glued[n1 + v];
    out.glued = std::make_shared<const Curve>(std::move(vs), std::move(es), std::move(ray_classes));
    return out;
}

}  // namespace tropcurve
