#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tropcurve/curve.hpp"

namespace tropcurve {

// Isometric embedding of a curve into another. Each source edge lands inside a single target edge,
// starting at `start` and running toward increasing (or, when reversed, decreasing) offsets.
struct EdgeImage {
    std::size_t edge = 0;
    Rational start;
    bool reversed = false;
};
struct Embedding {
    CurvePtr source, target;
    std::vector<PointRef> vertex_image;
    std::vector<EdgeImage> edge_image;
};

// Throws on length mismatch, inconsistent endpoints or non-injectivity.
void validate_embedding(const Embedding& emb);
PointRef map_point(const Embedding& emb, const PointRef& p);

struct SubInterval {
    Rational a;
    Extended b;
    friend bool operator==(const SubInterval&, const SubInterval&) = default;
};

struct SubgraphSpec {
    struct Interval {
        std::string edge;
        Rational a;
        Extended b;
    };
    std::vector<std::string> points;  // vertex ids or point names such as "e@1/2"
    std::vector<std::string> edges;   // whole edges
    std::vector<Interval> intervals;  // closed subintervals, offsets along the edge
};

// Closed subset of a curve: vertices plus, per edge, sorted disjoint closed intervals. Intervals
// touching an end include that end's vertex; single points at ends are stored as vertices only.
class Subgraph {
public:
    struct Component {
        std::vector<std::size_t> vertices;
        std::vector<std::pair<std::size_t, SubInterval>> pieces;
    };

    Subgraph(CurvePtr owner, std::vector<bool> vertex_in, std::vector<std::vector<SubInterval>> intervals);

    const CurvePtr& owner() const { return owner_; }
    const std::vector<bool>& vertex_in() const { return vertex_in_; }
    const std::vector<std::vector<SubInterval>>& intervals() const { return intervals_; }
    const std::vector<Component>& components() const { return components_; }
    std::size_t num_components() const { return components_.size(); }
    bool contains(const PointRef& p) const;
    bool empty() const { return components_.empty(); }

    friend bool operator==(const Subgraph& a, const Subgraph& b);

private:
    CurvePtr owner_;
    std::vector<bool> vertex_in_;
    std::vector<std::vector<SubInterval>> intervals_;
    std::vector<Component> components_;
};

Subgraph make_subgraph(const CurvePtr& c, const SubgraphSpec& spec);
Subgraph whole_curve(const CurvePtr& c);

// Shortest distance from p to the subgraph (+inf when no component is reachable).
Extended distance_to_subgraph(const Subgraph& g, const PointRef& p);
// Distance from the subgraph to every vertex (+inf for unreachable vertices and points at infinity
// outside the subgraph).
std::vector<Extended> subgraph_vertex_distances(const Subgraph& g);

// Component k as a curve in its own right with inherited lengths and ray classes, plus its
// embedding into the owner. Ids: whole edges and vertices keep their ids, partial edges become
// "e[a,b]", cut points "e@t".
struct SubgraphPiece {
    CurvePtr curve;
    Embedding embedding;
};
SubgraphPiece component_curve(const Subgraph& g, std::size_t k);

// The curve's own component k (its vertices and edges), with the embedding into c.
SubgraphPiece curve_component(const CurvePtr& c, std::size_t k);

// Quotient of c1 ⊔ c2 identifying ι1(x) with ι2(x). Vertex and edge ids are prefixed "1:" / "2:";
// edges of c1, c2 are subdivided at the images of the glued curve's vertices.
struct GlueResult {
    struct Piece {
        Rational from;
        Extended to;
        std::size_t glued_edge;
        Rational alpha;  // glued offset = alpha + sigma * (t - from)
        int sigma;
    };
    CurvePtr glued;
    Embedding iota1, iota2;
    std::vector<std::vector<Piece>> pieces1, pieces2;  // per original edge
    std::vector<std::size_t> vmap1, vmap2;             // per original vertex

    PointRef map1(const PointRef& p) const;
    PointRef map2(const PointRef& p) const;
};
GlueResult glue(const CurvePtr& c1, const CurvePtr& c2, const Embedding& e1, const Embedding& e2);

}  // namespace tropcurve
