#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tropcurve/germ.hpp"
#include "tropcurve/rational.hpp"
#include "tropcurve/trop_value.hpp"

namespace tropcurve {

// Tropical Laurent polynomial: a finite map exponent -> coefficient. Absent terms are -inf.
class TropPoly {
public:
    using Terms = std::map<IntVec, Rational>;

    explicit TropPoly(std::size_t vars = 1);
    TropPoly(std::size_t vars, Terms terms);
    static TropPoly monomial(const Rational& coeff, IntVec exponent);

    std::size_t vars() const { return vars_; }
    const Terms& terms() const { return terms_; }
    bool is_neg_inf() const { return terms_.empty(); }
    bool is_monomial() const { return terms_.size() == 1; }

    // Adds a term with ⊕ (keeps the larger coefficient on a repeated exponent).
    void add_term(IntVec exponent, const Rational& coeff);

    std::string str() const;
    static TropPoly parse(std::string_view text, std::size_t vars_hint = 0);

    friend bool operator==(const TropPoly& a, const TropPoly& b);
    friend bool operator!=(const TropPoly& a, const TropPoly& b) { return !(a == b); }

private:
    std::size_t vars_;
    Terms terms_;
};

TropPoly oplus(const TropPoly& f, const TropPoly& g);
TropPoly odot(const TropPoly& f, const TropPoly& g);

struct PolyEval {
    TropValue value;
    std::vector<IntVec> argmax_terms;  // sorted
};
PolyEval poly_eval(const TropPoly& f, const RatVec& x);

// std::nullopt encodes -inf.
std::optional<Int> poly_degree(const TropPoly& f);

Germ poly_to_germ(const TropPoly& f);

}  // namespace tropcurve
