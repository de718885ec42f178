#pragma once

#include <cstddef>
#include <memory>
#include <random>
#include <vector>

#include "tropcurve/germ.hpp"
#include "tropcurve/rational.hpp"
#include "tropcurve/trop_poly.hpp"
#include "tropcurve/trop_value.hpp"

namespace tropcurve {

// Random instance generators for the property suites.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : rng_(seed) {}

    Int integer(Int lo, Int hi);  // inclusive
    bool coin(double p = 0.5);
    Rational rational(Int num_range = 10, Int max_den = 4);   // num in [-range, range]
    Rational positive_rational(Int num_max = 8, Int max_den = 4);
    TropValue trop_value(double neg_inf_prob = 0.1);
    Germ germ(std::size_t n, double neg_inf_prob = 0.1, Int slope_range = 5);
    TropPoly poly(std::size_t vars, std::size_t max_terms, Int max_exp = 3, bool laurent = false);

    std::mt19937_64& engine() { return rng_; }

    template <class T>
    const T& pick(const std::vector<T>& v) {
        return v[static_cast<std::size_t>(integer(0, static_cast<Int>(v.size()) - 1))];
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace tropcurve
