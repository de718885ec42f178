#include "tropcurve/trop_value.hpp"

#include "tropcurve/errors.hpp"

namespace tropcurve {

const Rational& TropValue::value() const {
    if (!value_) throw TropError("value of -inf requested");
    return *value_;
}

std::string TropValue::str() const { return value_ ? to_string(*value_) : "-inf"; }

TropValue TropValue::parse(std::string_view text) {
    if (text == "-inf") return TropValue();
    return TropValue(parse_rational(text));
}

bool operator<(const TropValue& a, const TropValue& b) {
    if (a.is_neg_inf()) return !b.is_neg_inf();
    if (b.is_neg_inf()) return false;
    return a.value() < b.value();
}

TropValue oplus(const TropValue& a, const TropValue& b) { return a < b ? b : a; }

TropValue odot(const TropValue& a, const TropValue& b) {
    if (a.is_neg_inf() || b.is_neg_inf()) return TropValue();
    return TropValue(Rational(a.value() + b.value()));
}

TropValue inverse(const TropValue& a) {
    if (a.is_neg_inf()) throw TropError("zero has no multiplicative inverse");
    return TropValue(Rational(-a.value()));
}

TropValue power(const TropValue& a, Int k) {
    if (a.is_neg_inf()) {
        if (k < 0) throw TropError("zero has no multiplicative inverse");
        return k == 0 ? TropValue::one() : a;
    }
    return TropValue(Rational(a.value() * make_rational(k)));
}

TropOpsResult trop_ops(const TropValue& a, const TropValue& b) {
    TropOpsResult r{oplus(a, b), odot(a, b), std::nullopt};
    if (!a.is_neg_inf()) r.inverse_of_a = inverse(a);
    return r;
}

}  // namespace tropcurve
