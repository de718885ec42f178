#pragma once
// Conversions between library values and the oracle's fractions.

#include "oracle.hpp"
#include "tropcurve/rational.hpp"

inline oracle::Frac to_frac(const tropcurve::Rational& q) {
    return oracle::Frac(q.get_num().get_si(), q.get_den().get_si());
}

inline tropcurve::Rational to_rat(const oracle::Frac& f) {
    return tropcurve::make_rational(static_cast<long long>(f.n), static_cast<long long>(f.d));
}

inline tropcurve::Rational QS(const char* s) { return tropcurve::parse_rational(s); }
inline tropcurve::Rational Q(long long n, long long d = 1) { return tropcurve::make_rational(n, d); }
