#pragma once
// Reference arithmetic for expected values, deliberately independent of the library:
// small exact fractions on 128-bit integers and brute-force evaluators built on them.

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using i128 = __int128;

inline i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

struct Frac {
    i128 n = 0, d = 1;
    Frac() = default;
    Frac(long long num, long long den = 1) : n(num), d(den) { norm(); }  // NOLINT
    static Frac raw(i128 num, i128 den) {
        Frac f;
        f.n = num;
        f.d = den;
        f.norm();
        return f;
    }
    void norm() {
        if (d == 0) throw std::runtime_error("oracle: zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        i128 g = gcd128(n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
    }
    friend Frac operator+(Frac a, Frac b) { return raw(a.n * b.d + b.n * a.d, a.d * b.d); }
    friend Frac operator-(Frac a, Frac b) { return raw(a.n * b.d - b.n * a.d, a.d * b.d); }
    friend Frac operator*(Frac a, Frac b) { return raw(a.n * b.n, a.d * b.d); }
    friend Frac operator/(Frac a, Frac b) { return raw(a.n * b.d, a.d * b.n); }
    friend Frac operator-(Frac a) { return raw(-a.n, a.d); }
    friend bool operator==(Frac a, Frac b) { return a.n == b.n && a.d == b.d; }
    friend bool operator!=(Frac a, Frac b) { return !(a == b); }
    friend bool operator<(Frac a, Frac b) { return a.n * b.d < b.n * a.d; }
    friend bool operator>(Frac a, Frac b) { return b < a; }
    friend bool operator<=(Frac a, Frac b) { return !(b < a); }
    friend bool operator>=(Frac a, Frac b) { return !(a < b); }
    std::string str() const {
        auto s = [](i128 v) {
            bool neg = v < 0;
            if (neg) v = -v;
            std::string out;
            do {
                out.insert(out.begin(), char('0' + int(v % 10)));
                v /= 10;
            } while (v > 0);
            return neg ? "-" + out : out;
        };
        return d == 1 ? s(n) : s(n) + "/" + s(d);
    }
};

// Brute-force max of affine forms c + <e, x>; returns value and argmax indices.
struct Term {
    std::vector<long long> e;
    Frac c;
};
inline std::pair<Frac, std::vector<std::size_t>> max_plus_eval(const std::vector<Term>& terms,
                                                                 const std::vector<Frac>& x) {
    Frac best;
    std::vector<std::size_t> arg;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        Frac v = terms[i].c;
        for (std::size_t k = 0; k < x.size(); ++k) v = v + Frac(terms[i].e[k]) * x[k];
        if (arg.empty() || v > best) {
            best = v;
            arg = {i};
        } else if (v == best) {
            arg.push_back(i);
        }
    }
    return {best, arg};
}

// Is point q on the closed segment [a, b] (or ray from a along d when `ray`)? Plane only.
inline bool on_cell(const std::vector<Frac>& q, const std::vector<Frac>& a, const std::vector<Frac>& u, bool ray) {
    Frac wx = q[0] - a[0], wy = q[1] - a[1];
    if (wx * u[1] != wy * u[0]) return false;
    Frac uu = u[0] * u[0] + u[1] * u[1];
    Frac s = (wx * u[0] + wy * u[1]) / uu;
    return s >= Frac(0) && (ray || s <= Frac(1));
}

inline long long gcd_ll(long long a, long long b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

}  // namespace oracle
