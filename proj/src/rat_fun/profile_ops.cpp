#include "profile_ops.hpp"

#include <algorithm>
#include <iterator>
#include <set>

#include "tropcurve/errors.hpp"

namespace tropcurve {

EdgeProfile EdgeProfile::affine(const Extended& length, const Rational& start_value, Int slope) {
    EdgeProfile p;
    p.t.push_back(Rational(0));
    p.v.push_back(start_value);
    if (length.finite()) {
        p.t.push_back(length.value());
        p.v.push_back(start_value + make_rational(slope) * length.value());
    } else {
        p.tail = slope;
    }
    return p;
}

Rational EdgeProfile::value_at(const Rational& x) const {
    if (x >= t.back()) return v.back() + make_rational(tail) * (x - t.back());
    auto it = std::upper_bound(t.begin(), t.end(), x);
    std::size_t i = static_cast<std::size_t>(it - t.begin()) - 1;
    return v[i] + (v[i + 1] - v[i]) / (t[i + 1] - t[i]) * (x - t[i]);
}

namespace {
Int piece_slope(const EdgeProfile& p, std::size_t i) { return to_int((p.v[i + 1] - p.v[i]) / (p.t[i + 1] - p.t[i])); }
}  // namespace

Int EdgeProfile::slope_after(const Rational& x) const {
    if (x >= t.back()) return tail;
    auto it = std::upper_bound(t.begin(), t.end(), x);
    return piece_slope(*this, static_cast<std::size_t>(it - t.begin()) - 1);
}

Int EdgeProfile::slope_before(const Rational& x) const {
    if (x > t.back()) return tail;
    auto it = std::lower_bound(t.begin(), t.end(), x);
    return piece_slope(*this, static_cast<std::size_t>(it - t.begin()) - 1);
}

namespace profile {

void validate(const EdgeProfile& p, const Extended& length, const std::string& id) {
    auto fail = [&](const std::string& why) { return TropError("profile on edge '" + id + "': " + why); };
    if (p.t.empty() || p.t.size() != p.v.size()) throw fail("breakpoints and values do not match");
    if (p.t.front() != 0) throw fail("first breakpoint must be at offset 0");
    for (std::size_t i = 0; i + 1 < p.t.size(); ++i) {
        if (!(p.t[i] < p.t[i + 1])) throw fail("breakpoints must increase strictly");
        if (!is_integer((p.v[i + 1] - p.v[i]) / (p.t[i + 1] - p.t[i])))
            throw fail("non-integer slope after offset " + to_string(p.t[i]));
    }
    if (length.finite()) {
        if (p.t.back() != length.value()) throw fail("last breakpoint must be at the edge length");
        if (p.t.size() < 2) throw fail("a finite edge needs both end values");
        if (p.tail != 0) throw fail("slope at infinity on a finite edge");
    }
}

void canonicalize(EdgeProfile& p, bool infinite) {
    EdgeProfile out;
    out.tail = infinite ? p.tail : 0;
    out.t.reserve(p.t.size());
    out.v.reserve(p.v.size());
    out.t.push_back(p.t[0]);
    out.v.push_back(p.v[0]);
    Rational last_slope;
    for (std::size_t i = 1; i < p.t.size(); ++i) {
        Rational s = (p.v[i] - p.v[i - 1]) / (p.t[i] - p.t[i - 1]);
        if (out.t.size() >= 2 && s == last_slope) {
            out.t.back() = p.t[i];
            out.v.back() = p.v[i];
        } else {
            out.t.push_back(p.t[i]);
            out.v.push_back(p.v[i]);
            last_slope = s;
        }
    }
    if (infinite && out.t.size() >= 2 && last_slope == make_rational(out.tail)) {
        out.t.pop_back();
        out.v.pop_back();
    }
    p = std::move(out);
}

namespace {

std::vector<Rational> merged_offsets(const EdgeProfile& a, const EdgeProfile& b) {
    std::vector<Rational> out;
    out.reserve(a.t.size() + b.t.size());
    std::merge(a.t.begin(), a.t.end(), b.t.begin(), b.t.end(), std::back_inserter(out));
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Values at increasing offsets in one sweep, one slope per piece.
std::vector<Rational> values_at_sorted(const EdgeProfile& p, const std::vector<Rational>& xs) {
    std::vector<Rational> out;
    out.reserve(xs.size());
    std::size_t i = 0;
    Rational slope = p.t.size() > 1 ? Rational((p.v[1] - p.v[0]) / (p.t[1] - p.t[0])) : make_rational(p.tail);
    for (const auto& x : xs) {
        while (i + 1 < p.t.size() && x >= p.t[i + 1]) {
            ++i;
            slope = i + 1 < p.t.size() ? Rational((p.v[i + 1] - p.v[i]) / (p.t[i + 1] - p.t[i])) : make_rational(p.tail);
        }
        if (x == p.t[i]) out.push_back(p.v[i]);
        else out.push_back(p.v[i] + slope * (x - p.t[i]));
    }
    return out;
}

template <class F>
EdgeProfile pointwise(const EdgeProfile& a, const EdgeProfile& b, const std::vector<Rational>& xs, Int tail, F op,
                      bool infinite) {
    EdgeProfile out;
    auto va = values_at_sorted(a, xs), vb = values_at_sorted(b, xs);
    out.t = xs;
    out.v.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) out.v.push_back(op(va[i], vb[i]));
    out.tail = infinite ? tail : 0;
    canonicalize(out, infinite);
    return out;
}

}  // namespace

EdgeProfile max(const EdgeProfile& a, const EdgeProfile& b, bool infinite) {
    std::vector<Rational> base = merged_offsets(a, b);
    std::vector<Rational> va = values_at_sorted(a, base), vb = values_at_sorted(b, base);
    EdgeProfile out;
    auto crossing = [&](const Rational& x) {
        out.t.push_back(x);
        out.v.push_back(a.value_at(x));
    };
    for (std::size_t i = 0; i < base.size(); ++i) {
        out.t.push_back(base[i]);
        out.v.push_back(va[i] < vb[i] ? vb[i] : va[i]);
        if (i + 1 == base.size()) break;
        Rational d0 = va[i] - vb[i], d1 = va[i + 1] - vb[i + 1];
        if ((d0 < 0 && d1 > 0) || (d0 > 0 && d1 < 0)) crossing(base[i] + d0 / (d0 - d1) * (base[i + 1] - base[i]));
    }
    if (infinite) {
        Rational d = va.back() - vb.back();
        Int ds = a.tail - b.tail;
        if (ds != 0 && ((d < 0 && ds > 0) || (d > 0 && ds < 0))) crossing(base.back() - d / make_rational(ds));
    }
    out.tail = infinite ? std::max(a.tail, b.tail) : 0;
    canonicalize(out, infinite);
    return out;
}

EdgeProfile min(const EdgeProfile& a, const EdgeProfile& b, bool infinite) {
    return negate(max(negate(a), negate(b), infinite));
}

EdgeProfile add(const EdgeProfile& a, const EdgeProfile& b, bool infinite) {
    return pointwise(a, b, merged_offsets(a, b), a.tail + b.tail,
                     [](const Rational& x, const Rational& y) { return Rational(x + y); }, infinite);
}

EdgeProfile negate(const EdgeProfile& a) {
    EdgeProfile out = a;
    for (auto& x : out.v) x = -x;
    out.tail = -a.tail;
    return out;
}

EdgeProfile shift(const EdgeProfile& a, const Rational& c) {
    EdgeProfile out = a;
    for (auto& x : out.v) x += c;
    return out;
}

EdgeProfile scale(const EdgeProfile& a, Int k) {
    EdgeProfile out = a;
    for (auto& x : out.v) x *= make_rational(k);
    out.tail = a.tail * k;
    return out;
}

EdgeProfile slice(const EdgeProfile& a, const Rational& lo, const Extended& hi) {
    EdgeProfile out;
    out.t.push_back(Rational(0));
    out.v.push_back(a.value_at(lo));
    for (std::size_t i = 0; i < a.t.size(); ++i)
        if (a.t[i] > lo && Extended(a.t[i]) < hi) {
            out.t.push_back(a.t[i] - lo);
            out.v.push_back(a.v[i]);
        }
    if (hi.finite()) {
        if (hi.value() > lo) {
            out.t.push_back(hi.value() - lo);
            out.v.push_back(a.value_at(hi.value()));
        }
        out.tail = 0;
    } else {
        out.tail = a.tail;
    }
    canonicalize(out, !hi.finite());
    return out;
}

}  // namespace profile
}  // namespace tropcurve
