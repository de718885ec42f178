#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tropcurve/rational.hpp"
#include "tropcurve/trop_value.hpp"

namespace tropcurve {

// Element of the germ semifield R_n: -inf, or a value together with n integer slopes.
class Germ {
public:
    static Germ zero(std::size_t n);  // -inf
    static Germ one(std::size_t n);   // (0, 0-vector)
    Germ(Rational coeff, IntVec slopes);

    std::size_t n() const { return n_; }
    bool is_neg_inf() const { return neg_inf_; }
    const Rational& coeff() const;
    const IntVec& slopes() const;

    // R_0 is T.
    TropValue as_trop_value() const;

    std::string str() const;

    friend bool operator==(const Germ& a, const Germ& b);
    friend bool operator!=(const Germ& a, const Germ& b) { return !(a == b); }

private:
    Germ() = default;
    std::size_t n_ = 0;
    bool neg_inf_ = true;
    Rational coeff_;
    IntVec slopes_;
};

Germ boxplus(const Germ& g, const Germ& h);
Germ boxdot(const Germ& g, const Germ& h);
Germ inverse(const Germ& g);
Germ power(const Germ& g, Int k);

struct GermOpsResult {
    Germ sum;
    Germ product;
    Germ inverse_of_g;
};
GermOpsResult germ_ops(const Germ& g, const Germ& h);  // throws on mismatched n or g = -inf

// Drops slope component k (1-based).
Germ germ_forget(const Germ& g, std::size_t k);
Int germ_omega(const Germ& g);

struct GeneratorReport {
    bool pass = true;
    std::vector<std::string> identities_checked;
};

inline constexpr std::size_t kMaxGeneratorCheck = 8;
GeneratorReport verify_rn_generators(std::size_t n, std::size_t bound = kMaxGeneratorCheck);

}  // namespace tropcurve
