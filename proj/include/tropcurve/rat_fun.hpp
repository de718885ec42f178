#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tropcurve/pl_function.hpp"
#include "tropcurve/subgraph.hpp"

namespace tropcurve {

// ---- divisors ----

struct Divisor {
    CurvePtr curve;
    std::map<PointRef, Int> coeff;  // nonzero coefficients only

    Int degree() const;
    Int at(const PointRef& p) const;
    bool effective() const;
    // Support in printing order: component, then edge id, then offset (vertices by id).
    std::vector<std::pair<PointRef, Int>> sorted() const;

    friend bool operator==(const Divisor& a, const Divisor& b);
};

Divisor make_divisor(CurvePtr c, const std::vector<std::pair<PointRef, Int>>& terms);
Divisor operator+(const Divisor& a, const Divisor& b);
Divisor operator-(const Divisor& a);

Divisor div_of(const PLFunction& f);
bool is_harmonic_at(const PLFunction& f, const PointRef& p);
bool rd_member(const Divisor& d, const PLFunction& f);

// Degree of the module generated by gens; std::nullopt stands for -inf (all generators -inf).
std::optional<Int> module_degree(const std::vector<PLFunction>& gens);

// ---- chip firing, restriction, extension ----

// x ↦ -min(dist(g, x), l); constant 0 on components that g does not meet.
PLFunction chip_fire(const Subgraph& g, const Extended& l);

// f ∘ ι for an embedding ι into f's curve.
PLFunction pull_along(const PLFunction& f, const Embedding& emb);

// One function per component of g, each on component_curve(g, k).
std::vector<PLFunction> restrict_to(const PLFunction& f, const Subgraph& g);

// Smallest |s| for which extend(g, parts, s) succeeds.
Int min_extension_slope(const Subgraph& g, const std::vector<PLFunction>& parts);
// Extension of per-component functions to the whole curve: descends with slope s < 0 away from g,
// then stays at min(0, boundary minimum); rays outside g parallel to a ray of g keep its slope at
// infinity.
PLFunction extend(const Subgraph& g, const std::vector<PLFunction>& parts, Int s);

// ---- parallel rays, pseudodirect tuples ----

struct ParallelReport {
    bool ok = true;
    std::string label;           // offending class
    std::string edge_a, edge_b;  // two rays of that class with different slopes at infinity
    Int slope_a = 0, slope_b = 0;
};
ParallelReport respects_parallel(const PLFunction& f);

// parts[k] lives on curve_component(c, k).
PLFunction pseudo_tuple(const CurvePtr& c, const std::vector<PLFunction>& parts);

// ---- gluing ----

// Name of a point of the glued subgraph where h1∘ι1 and h2∘ι2 differ, if any.
std::optional<std::string> glue_mismatch(const PLFunction& h1, const PLFunction& h2, const GlueResult& glued);
PLFunction glue_function(const PLFunction& h1, const PLFunction& h2, const GlueResult& glued);

// ---- disconnectivity witness ----

struct Witness {
    PLFunction s;
    Rational a1, a2, a3;
};
struct WitnessCheck {
    bool below_a3 = false;     // s ≠ s ⊕ a3
    bool above_a1 = false;     // s ≠ (s^{-1} ⊕ a1^{-1})^{-1}
    bool identity = false;     // (s⊕a1)⊙(s^{-1}⊕a2^{-1})^{-1} = (a1⊙a2^{-1})⊙(s⊕a2)⊙(s^{-1}⊕a3^{-1})^{-1}
    bool ok() const { return below_a3 && above_a1 && identity; }
};
WitnessCheck check_witness(const PLFunction& s, const Rational& a1, const Rational& a2, const Rational& a3);
// std::nullopt when c is connected.
std::optional<Witness> disconnect_witness(const CurvePtr& c);

}  // namespace tropcurve
