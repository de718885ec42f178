#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tropcurve/complex.hpp"
#include "tropcurve/pl_function.hpp"
#include "tropcurve/trop_poly.hpp"

namespace tropcurve {

// θ = (f_1, ..., f_n) on a curve, cut into the pieces on which every f_i is affine.
struct RealizationMap {
    struct Piece {
        std::size_t edge;
        Rational from;
        Extended to;    // +inf for the unbounded piece of a ray
        IntVec slopes;  // slopes of the f_i along the piece, in edge direction
        RatVec start;   // θ at `from`
        // Lattice length of the image per unit of source length (gcd of slopes; 0 when collapsed).
        Int expansion() const;
    };
    CurvePtr curve;
    std::vector<PLFunction> fs;
    std::vector<PointRef> skeleton;     // vertices and breakpoints (finite points only)
    std::vector<RatVec> skeleton_image;
    std::vector<Piece> pieces;
    PolyComplex1D image;  // canonical form, weights = gcd of slopes
};

RealizationMap realize(const CurvePtr& c, const std::vector<PLFunction>& fs);

struct RealizationReport {
    bool injective = true;
    bool local_isometry = true;
    bool parallel_respected = true;
    bool condition5_free = true;
    std::vector<std::string> notes;  // one line per failed check
};
RealizationReport check_realization(const RealizationMap& r);

struct BalanceReport {
    bool balanced = true;
    std::vector<IntVec> defects;  // per vertex of the complex: Σ weight · primitive direction outward
};
BalanceReport check_balanced(const PolyComplex1D& k);

struct HarmonicReport {
    struct Row {
        std::string point;
        std::vector<bool> harmonic;  // one per function
    };
    std::vector<Row> table;
    bool all_harmonic = true;
    BalanceReport balance;
    // all_harmonic implies balance.balanced
    bool implication_holds() const { return !all_harmonic || balance.balanced; }
};
HarmonicReport harmonic_realization_check(const RealizationMap& r);

struct Ingested {
    CurvePtr curve;
    std::vector<PLFunction> fs;
    RealizationMap realization;
};
// Curve whose realization by the coordinate functions is k: edge lengths are lattice lengths divided
// by weights, and rays with equal directions share a class.
Ingested ingest_balanced(const PolyComplex1D& k);

inline constexpr std::size_t kMaxFitCells = 32;
// Polynomial whose weighted corner locus is k, with exponents shifted to touch both axes and the
// coefficient of the region containing (-M,-M) for large M set to 0.
TropPoly fit_tropical_polynomial(const PolyComplex1D& k);

struct IntersectionPoint {
    RatVec point;
    Int mult;
    friend bool operator==(const IntersectionPoint&, const IntersectionPoint&) = default;
};
// Throws when some common point is not transversal, naming the violated condition.
std::vector<IntersectionPoint> intersect(const PolyComplex1D& a, const PolyComplex1D& b);

struct BezoutReport {
    Int sum = 0, bound = 0;
    bool ok() const { return sum <= bound; }
};
BezoutReport bezout_check(const PolyComplex1D& a, const PolyComplex1D& b);

// Deterministic renderings; see README for the SVG viewport rule.
std::string complex_svg(const PolyComplex1D& k);
std::string complex_csv(const PolyComplex1D& k);

}  // namespace tropcurve
