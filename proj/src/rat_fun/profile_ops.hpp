#pragma once
// Edge-level arithmetic shared by the function and chip-firing code.

#include "tropcurve/pl_function.hpp"

namespace tropcurve::profile {

void validate(const EdgeProfile& p, const Extended& length, const std::string& edge_id);
void canonicalize(EdgeProfile& p, bool infinite);
EdgeProfile max(const EdgeProfile& a, const EdgeProfile& b, bool infinite);
EdgeProfile min(const EdgeProfile& a, const EdgeProfile& b, bool infinite);
EdgeProfile add(const EdgeProfile& a, const EdgeProfile& b, bool infinite);
EdgeProfile negate(const EdgeProfile& a);
EdgeProfile shift(const EdgeProfile& a, const Rational& c);
EdgeProfile scale(const EdgeProfile& a, Int k);
// Restriction to [lo, hi] re-based at lo (hi may be +inf on infinite edges).
EdgeProfile slice(const EdgeProfile& a, const Rational& lo, const Extended& hi);

}  // namespace tropcurve::profile
