#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "tropcurve/curve.hpp"
#include "tropcurve/rational.hpp"

namespace tropcurve {

// Values of a function along one stored edge, parametrized by the offset from the edge's u end.
// t[0] = 0; t is strictly increasing; on finite edges t.back() equals the length. On infinite
// edges `tail` is the slope after t.back().
struct EdgeProfile {
    std::vector<Rational> t;
    std::vector<Rational> v;
    Int tail = 0;

    static EdgeProfile affine(const Extended& length, const Rational& start_value, Int slope);
    Rational value_at(const Rational& offset) const;
    Int slope_after(const Rational& offset) const;   // slope on the piece right of offset
    Int slope_before(const Rational& offset) const;  // slope on the piece left of offset (offset > 0)
    friend bool operator==(const EdgeProfile&, const EdgeProfile&) = default;
};

// Piecewise affine function with integer slopes on a curve, or the constant -inf.
// Stored canonically (no redundant breakpoints), so == is structural equality.
class PLFunction {
public:
    static PLFunction neg_inf(CurvePtr c);
    static PLFunction constant(CurvePtr c, const Rational& value);

    // `isolated` gives values at vertices without incident edges (default 0).
    PLFunction(CurvePtr c, std::vector<EdgeProfile> profiles, const std::map<std::size_t, Rational>& isolated = {});

    const CurvePtr& curve() const { return curve_; }
    bool is_neg_inf() const { return neg_inf_; }
    const std::vector<EdgeProfile>& profiles() const { return profiles_; }
    const EdgeProfile& profile(std::size_t e) const { return profiles_.at(e); }
    // Value at a finite vertex (throws for points at infinity and for NEG_INF).
    const Rational& vertex_value(std::size_t v) const;
    Int slope_at_infinity(std::size_t e) const;  // infinite edges only

    friend bool operator==(const PLFunction& a, const PLFunction& b);
    friend bool operator!=(const PLFunction& a, const PLFunction& b) { return !(a == b); }

private:
    PLFunction() = default;
    CurvePtr curve_;
    bool neg_inf_ = false;
    std::vector<EdgeProfile> profiles_;
    std::vector<Rational> vertex_values_;
};

PLFunction oplus(const PLFunction& f, const PLFunction& g);
PLFunction odot(const PLFunction& f, const PLFunction& g);
PLFunction inverse(const PLFunction& f);                    // throws on NEG_INF
PLFunction scalar(const Rational& a, const PLFunction& f);  // a ⊙ f
PLFunction power(const PLFunction& f, Int k);               // f^{⊙k}; negative k needs f ≠ NEG_INF
PLFunction omin(const PLFunction& f, const PLFunction& g);  // (f^{-1} ⊕ g^{-1})^{-1}

struct PLOps {
    PLFunction sum, product;
    std::optional<PLFunction> inverse_of_f;
    PLFunction scaled;
};
PLOps pl_ops(const PLFunction& f, const PLFunction& g, const Rational& t);

// Exact value; ±inf only at points at infinity (or everywhere for NEG_INF).
Extended eval(const PLFunction& f, const PointRef& p);

// Slope of f when leaving p along d. At a point at infinity this is minus the slope toward it.
Int outgoing_slope(const PLFunction& f, const PointRef& p, const Direction& d);

// Offsets of every breakpoint of f on edge e, including the ends of finite edges.
std::vector<Rational> breakpoints(const PLFunction& f, std::size_t e);

// t ↦ f(start + k·t) along source parameter t ∈ [0, length]; the edge data come from edge e of f's
// curve. For infinite `length`, k must be positive and e infinite.
EdgeProfile sample_edge(const PLFunction& f, std::size_t e, const Rational& start, Int k, const Extended& length);

// Function from user-level data: edge id -> (offset, value) list and optional slope at infinity.
// Loop ids take a single profile over the whole loop.
struct UserProfile {
    std::vector<std::pair<Rational, Rational>> breakpoints;
    Int slope_at_infinity = 0;
};
PLFunction make_function(const CurvePtr& c, const std::map<std::string, UserProfile>& edges,
                         const std::map<std::string, Rational>& isolated_vertices = {});
// Inverse of make_function (loops re-joined).
std::map<std::string, UserProfile> user_profiles(const PLFunction& f);

}  // namespace tropcurve
