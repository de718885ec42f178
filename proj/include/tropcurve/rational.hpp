#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tropcurve {

using Rational = mpq_class;
using Int = std::int64_t;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rational>;

// Accepts "p/q", "p", optional leading sign. Result is in lowest terms.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

Rational make_rational(Int num, Int den = 1);
bool is_integer(const Rational& q);
Int to_int(const Rational& q);  // throws if not an integer or out of range

Int gcd_abs(Int a, Int b);
Int gcd_of(const IntVec& v);  // gcd of absolute values, 0 for the zero vector

// Decimal rendering with `digits` fractional digits, rounded half away from zero.
std::string to_decimal(const Rational& q, int digits);

// A value in Q extended by -inf and +inf.
class Extended {
public:
    enum class Kind { NegInf, Finite, PosInf };

    Extended() : kind_(Kind::Finite) {}
    Extended(const Rational& q) : kind_(Kind::Finite), value_(q) {}  // NOLINT
    static Extended neg_inf() { return Extended(Kind::NegInf); }
    static Extended pos_inf() { return Extended(Kind::PosInf); }

    Kind kind() const { return kind_; }
    bool finite() const { return kind_ == Kind::Finite; }
    bool is_pos_inf() const { return kind_ == Kind::PosInf; }
    bool is_neg_inf() const { return kind_ == Kind::NegInf; }
    const Rational& value() const;

    std::string str() const;

    friend bool operator==(const Extended& a, const Extended& b);
    friend bool operator<(const Extended& a, const Extended& b);
    friend bool operator!=(const Extended& a, const Extended& b) { return !(a == b); }
    friend bool operator<=(const Extended& a, const Extended& b) { return !(b < a); }
    friend bool operator>(const Extended& a, const Extended& b) { return b < a; }
    friend bool operator>=(const Extended& a, const Extended& b) { return !(a < b); }

private:
    explicit Extended(Kind k) : kind_(k) {}
    Kind kind_;
    Rational value_;
};

Extended operator+(const Extended& a, const Extended& b);  // +inf + -inf throws
Extended parse_extended(std::string_view text);            // also "inf", "+inf", "-inf"

}  // namespace tropcurve
