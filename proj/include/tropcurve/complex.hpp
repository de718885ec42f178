#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tropcurve/rational.hpp"

namespace tropcurve {

// Weighted one-dimensional rational polyhedral complex in Q^n.
struct PolyComplex1D {
    struct Segment {
        std::size_t a, b;
        Int weight;
        friend bool operator==(const Segment&, const Segment&) = default;
    };
    struct Ray {
        std::size_t from;
        IntVec dir;  // primitive
        Int weight;
        friend bool operator==(const Ray&, const Ray&) = default;
    };

    std::size_t dim = 2;
    std::vector<RatVec> vertices;
    std::vector<Segment> segments;
    std::vector<Ray> rays;

    friend bool operator==(const PolyComplex1D&, const PolyComplex1D&) = default;
};

// Primitive integer direction of a nonzero rational vector.
IntVec primitive_direction(const RatVec& v);
IntVec primitive_direction(const IntVec& v);
// Lattice length of a rational vector: the t with v = t * primitive(v).
Rational lattice_length(const RatVec& v);

RatVec sub(const RatVec& a, const RatVec& b);
RatVec add_scaled(const RatVec& p, const IntVec& d, const Rational& t);  // p + t d

// A cell as a parametrized set: p + s u with s in [0,1] (segment) or s >= 0 (ray).
struct CellGeom {
    RatVec p;
    RatVec u;
    bool ray = false;
};
struct CellHit {
    enum class Kind { None, Point, Overlap };
    Kind kind = Kind::None;
    RatVec point;  // the intersection point, or one end of the overlap
    Rational s, t; // parameters of `point` on the two cells
};
CellHit intersect_cells(const CellGeom& a, const CellGeom& b);
std::vector<CellGeom> cell_geometry(const PolyComplex1D& k);  // segments first, then rays

// Index sanity, positive weights, primitive directions, nondegenerate segments.
void validate_structure(const PolyComplex1D& k);

// Pairwise intersections of cells beyond shared vertices. Empty means a valid complex.
std::vector<std::string> complex_problems(const PolyComplex1D& k);

// Normal form: identical points merged, duplicate cells summed, collinear 2-valent vertices with
// equal weights removed, a bare line anchored at the point nearest the origin, everything sorted.
// Two complexes with the same weighted support have equal normal forms.
PolyComplex1D canonical_complex(const PolyComplex1D& k);

PolyComplex1D translate(const PolyComplex1D& k, const RatVec& shift);

// Connectivity of the support.
bool is_connected(const PolyComplex1D& k);

}  // namespace tropcurve
