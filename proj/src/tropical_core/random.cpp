#include "tropcurve/random.hpp"

namespace tropcurve {

Int RandomSource::integer(Int lo, Int hi) { return std::uniform_int_distribution<Int>(lo, hi)(rng_); }

bool RandomSource::coin(double p) { return std::bernoulli_distribution(p)(rng_); }

Rational RandomSource::rational(Int num_range, Int max_den) {
    return make_rational(integer(-num_range, num_range), integer(1, max_den));
}

Rational RandomSource::positive_rational(Int num_max, Int max_den) {
    return make_rational(integer(1, num_max), integer(1, max_den));
}

TropValue RandomSource::trop_value(double neg_inf_prob) {
    if (coin(neg_inf_prob)) return TropValue::neg_inf();
    return TropValue(rational());
}

Germ RandomSource::germ(std::size_t n, double neg_inf_prob, Int slope_range) {
    if (coin(neg_inf_prob)) return Germ::zero(n);
    IntVec s(n);
    for (auto& x : s) x = integer(-slope_range, slope_range);
    // small coefficient pool so that the equal-coefficient branch of ⊞ is exercised often
    Rational c = coin(0.5) ? make_rational(integer(-2, 2)) : rational();
    return Germ(c, std::move(s));
}

TropPoly RandomSource::poly(std::size_t vars, std::size_t max_terms, Int max_exp, bool laurent) {
    TropPoly p(vars);
    auto terms = static_cast<std::size_t>(integer(1, static_cast<Int>(max_terms)));
    for (std::size_t t = 0; t < terms; ++t) {
        IntVec e(vars);
        for (auto& x : e) x = integer(laurent ? -max_exp : 0, max_exp);
        p.add_term(std::move(e), rational());
    }
    return p;
}

}  // namespace tropcurve
