#include "tropcurve/rational.hpp"

#include <cctype>
#include <limits>
#include <numeric>

#include "tropcurve/errors.hpp"

namespace tropcurve {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    auto slash = s.find('/');
    std::string_view num = s.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
        throw ParseError("not a rational number: '" + std::string(text) + "'");
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    Rational q(n, d);
    q.canonicalize();
    return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational make_rational(Int num, Int den) {
    if (den == 0) throw TropError("zero denominator");
    Rational q{mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den))};
    q.canonicalize();
    return q;
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

Int to_int(const Rational& q) {
    if (!is_integer(q)) throw TropError("expected an integer, got " + to_string(q));
    const mpz_class& n = q.get_num();
    if (!n.fits_slong_p()) throw TropError("integer out of range: " + to_string(q));
    return static_cast<Int>(n.get_si());
}

Int gcd_abs(Int a, Int b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

Int gcd_of(const IntVec& v) {
    Int g = 0;
    for (Int x : v) g = gcd_abs(g, x);
    return g;
}

std::string to_decimal(const Rational& q, int digits) {
    mpz_class scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    Rational scaled = abs(q) * scale;
    mpz_class rounded = (scaled.get_num() * 2 + scaled.get_den()) / (scaled.get_den() * 2);
    std::string s = rounded.get_str();
    if (static_cast<int>(s.size()) <= digits) s.insert(0, digits + 1 - s.size(), '0');
    std::string out = s.substr(0, s.size() - digits);
    if (digits > 0) out += "." + s.substr(s.size() - digits);
    if (q < 0 && rounded != 0) out.insert(0, "-");
    return out;
}

const Rational& Extended::value() const {
    if (kind_ != Kind::Finite) throw TropError("value of an infinite quantity requested");
    return value_;
}

std::string Extended::str() const {
    switch (kind_) {
        case Kind::NegInf: return "-inf";
        case Kind::PosInf: return "inf";
        default: return to_string(value_);
    }
}

bool operator==(const Extended& a, const Extended& b) {
    if (a.kind_ != b.kind_) return false;
    return a.kind_ != Extended::Kind::Finite || a.value_ == b.value_;
}

bool operator<(const Extended& a, const Extended& b) {
    if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) < static_cast<int>(b.kind_);
    return a.kind_ == Extended::Kind::Finite && a.value_ < b.value_;
}

Extended operator+(const Extended& a, const Extended& b) {
    if ((a.is_pos_inf() && b.is_neg_inf()) || (a.is_neg_inf() && b.is_pos_inf()))
        throw TropError("inf - inf is undefined");
    if (a.is_pos_inf() || b.is_pos_inf()) return Extended::pos_inf();
    if (a.is_neg_inf() || b.is_neg_inf()) return Extended::neg_inf();
    return Extended(Rational(a.value() + b.value()));
}

Extended parse_extended(std::string_view text) {
    if (text == "inf" || text == "+inf") return Extended::pos_inf();
    if (text == "-inf") return Extended::neg_inf();
    return Extended(parse_rational(text));
}

}  // namespace tropcurve
