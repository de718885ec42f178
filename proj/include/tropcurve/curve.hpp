#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tropcurve/rational.hpp"

namespace tropcurve {

// User-level description of a curve. Loops are allowed here; an omitted `v` on an
// infinite edge asks for a synthesized point at infinity.
struct CurveDescription {
    struct Vertex {
        std::string id;
        bool at_infinity = false;
    };
    struct Edge {
        std::string id;
        std::string u;
        std::optional<std::string> v;
        Extended length;  // finite positive or +inf
    };
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
    std::map<std::string, std::string> ray_classes;  // infinite edge id -> label

    friend bool operator==(const CurveDescription&, const CurveDescription&);
};

// A point of a curve, normalized: either a vertex or a strictly interior edge point.
struct PointRef {
    enum class Kind { Vertex, OnEdge };
    Kind kind = Kind::Vertex;
    std::size_t index = 0;  // vertex or edge index
    Rational offset;        // from the edge's u end; zero for vertices

    static PointRef vertex(std::size_t v) { return PointRef{Kind::Vertex, v, Rational(0)}; }
    bool is_vertex() const { return kind == Kind::Vertex; }

    friend bool operator==(const PointRef& a, const PointRef& b) {
        return a.kind == b.kind && a.index == b.index && a.offset == b.offset;
    }
    friend bool operator!=(const PointRef& a, const PointRef& b) { return !(a == b); }
    friend bool operator<(const PointRef& a, const PointRef& b);
};

// A germ of path leaving a point along an edge.
struct Direction {
    std::size_t edge;
    bool forward;  // toward increasing offset
    friend bool operator==(const Direction&, const Direction&) = default;
};

// Metric graph model with points at infinity and parallel-ray class labels. Stored edges
// never form loops: a loop is split at a hidden midpoint. Infinite edges are stored with
// the finite endpoint as u and the point at infinity as v.
class Curve {
public:
    struct Vertex {
        std::string id;
        bool at_infinity = false;
        bool hidden = false;   // midpoint of a split loop
        std::string loop_id;   // for hidden vertices: the user-level loop edge id
        friend bool operator==(const Vertex&, const Vertex&) = default;
    };
    struct Edge {
        std::string id;
        std::size_t u = 0, v = 0;
        Extended length;
        friend bool operator==(const Edge&, const Edge&) = default;
    };

    Curve(std::vector<Vertex> vertices, std::vector<Edge> edges, std::map<std::string, std::string> ray_classes);

    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const Vertex& vertex(std::size_t i) const { return vertices_.at(i); }
    const Edge& edge(std::size_t i) const { return edges_.at(i); }
    std::size_t num_vertices() const { return vertices_.size(); }
    std::size_t num_edges() const { return edges_.size(); }

    std::optional<std::size_t> find_vertex(std::string_view id) const;
    std::optional<std::size_t> find_edge(std::string_view id) const;
    std::size_t vertex_index(std::string_view id) const;  // throws
    std::size_t edge_index(std::string_view id) const;    // throws

    bool is_infinite(std::size_t e) const { return !edges_[e].length.finite(); }
    const Rational& length(std::size_t e) const { return edges_[e].length.value(); }
    const std::string& ray_class(std::size_t e) const;  // infinite edges only
    const std::map<std::string, std::string>& ray_classes() const { return ray_class_; }
    std::vector<std::size_t> infinite_edges() const;

    const std::vector<std::size_t>& incident(std::size_t v) const { return incident_[v]; }

    std::size_t num_components() const { return num_components_; }
    std::size_t component_of_vertex(std::size_t v) const { return component_[v]; }
    std::size_t component_of(const PointRef& p) const;
    std::vector<std::size_t> component_vertices(std::size_t k) const;
    std::vector<std::size_t> component_edges(std::size_t k) const;

    // Points.
    PointRef edge_point(std::size_t e, const Rational& offset) const;  // normalizes end offsets
    PointRef infinity_of(std::size_t e) const;
    bool is_infinity(const PointRef& p) const;
    void check_point(const PointRef& p) const;
    // "V" for a vertex id, "e@t" for an edge point (t rational or "inf"); loop ids accepted.
    PointRef parse_point(std::string_view text) const;
    std::string point_name(const PointRef& p) const;

    // Internal edges that make up a user-level edge id, with the offset at which each starts.
    std::vector<std::pair<std::size_t, Rational>> pieces_of(std::string_view user_edge_id) const;
    // User-level edge id and offset of an internal edge position.
    std::pair<std::string, Rational> user_position(std::size_t e, const Rational& offset) const;

    // Directions at p in the default order: incident edges sorted by id (u-end first); at an
    // interior point the direction toward u precedes the one toward v.
    std::vector<Direction> directions(const PointRef& p) const;
    std::size_t valence(const PointRef& p) const { return directions(p).size(); }

    friend bool operator==(const Curve& a, const Curve& b);

private:
    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
    std::map<std::string, std::string> ray_class_;
    std::map<std::string, std::size_t, std::less<>> vertex_by_id_, edge_by_id_;
    std::vector<std::vector<std::size_t>> incident_;
    std::vector<std::size_t> component_;
    std::size_t num_components_ = 0;
};

using CurvePtr = std::shared_ptr<const Curve>;

CurvePtr build_curve(const CurveDescription& d);
CurveDescription describe(const Curve& c);

std::size_t valence(const Curve& c, const PointRef& p);

struct Distance {
    Extended value;
    bool different_components = false;
};
Distance distance(const Curve& c, const PointRef& p, const PointRef& q);
// Shortest distances from p to every vertex (infinite for points at infinity and other components).
std::vector<Extended> distances_from(const Curve& c, const PointRef& p);

CurvePtr canonical_model(const Curve& c);

// Disjoint union. Vertex and edge ids become "k:id" (k is 1-based). Ray class labels become
// "k:label" unless `shared_classes` maps (k, label) to a new common label.
CurvePtr disjoint_union(const std::vector<CurvePtr>& cs,
                        const std::map<std::pair<std::size_t, std::string>, std::string>& shared_classes = {});

}  // namespace tropcurve
