#pragma once

#include "tropcurve/complex.hpp"
#include "tropcurve/trop_poly.hpp"

namespace tropcurve {

struct Window {
    Rational xmin, xmax, ymin, ymax;
};

inline constexpr std::size_t kMaxHypersurfaceTerms = 32;

// Corner locus of a two-variable polynomial with the weights of the dual Newton edges.
PolyComplex1D hypersurface2(const TropPoly& f, const Window& window);

// Vertices of the corner locus (points where the maximizing exponents span a polygon).
std::vector<RatVec> hypersurface_vertices(const TropPoly& f);

// A window that strictly contains every vertex, padded by `margin`.
Window auto_window(const TropPoly& f, const Rational& margin = 1);

}  // namespace tropcurve
