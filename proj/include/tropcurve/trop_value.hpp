#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "tropcurve/rational.hpp"

namespace tropcurve {

// Element of the max-plus semifield Q ∪ {-inf}.
class TropValue {
public:
    TropValue() = default;  // -inf
    TropValue(const Rational& q) : value_(q) {}  // NOLINT
    static TropValue neg_inf() { return TropValue(); }
    static TropValue one() { return TropValue(Rational(0)); }

    bool is_neg_inf() const { return !value_.has_value(); }
    const Rational& value() const;

    std::string str() const;
    static TropValue parse(std::string_view text);

    friend bool operator==(const TropValue& a, const TropValue& b) { return a.value_ == b.value_; }
    friend bool operator!=(const TropValue& a, const TropValue& b) { return !(a == b); }
    friend bool operator<(const TropValue& a, const TropValue& b);

private:
    std::optional<Rational> value_;
};

TropValue oplus(const TropValue& a, const TropValue& b);
TropValue odot(const TropValue& a, const TropValue& b);
TropValue inverse(const TropValue& a);  // throws on -inf
TropValue power(const TropValue& a, Int k);

struct TropOpsResult {
    TropValue sum;
    TropValue product;
    std::optional<TropValue> inverse_of_a;  // empty when a = -inf
};
TropOpsResult trop_ops(const TropValue& a, const TropValue& b);

}  // namespace tropcurve
