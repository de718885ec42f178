#pragma once
// Finite-difference slopes and divisors, computed from point evaluations only.

#include <map>
#include <set>
#include <string>

#include "bridge.hpp"
#include "doctest.h"
#include "tropcurve/pl_function.hpp"

namespace fn_oracle {

using namespace tropcurve;

// Slope leaving p along d by a finite difference below the breakpoint spacing.
inline long long fd_slope(const PLFunction& f, const PointRef& p, const Direction& d) {
    const Curve& c = *f.curve();
    const auto& prof = f.profile(d.edge);
    if (p.is_vertex() && c.vertex(p.index).at_infinity) {
        Rational T = prof.t.back() + 1;
        oracle::Frac a = to_frac(eval(f, c.edge_point(d.edge, T)).value());
        oracle::Frac b = to_frac(eval(f, c.edge_point(d.edge, T + 1)).value());
        oracle::Frac s = b - a;
        return static_cast<long long>(-s.n);
    }
    Rational off = p.is_vertex() ? (d.forward ? Rational(0) : c.length(d.edge)) : p.offset;
    Rational eps = 1;
    for (const auto& t : prof.t)
        if (t != off) eps = std::min(eps, Rational(abs(t - off) / 2));
    if (!c.is_infinite(d.edge)) eps = std::min(eps, Rational(c.length(d.edge) / 2));
    Rational q = d.forward ? Rational(off + eps) : Rational(off - eps);
    oracle::Frac a = to_frac(eval(f, p).value()), b = to_frac(eval(f, c.edge_point(d.edge, q)).value());
    oracle::Frac s = (b - a) / to_frac(eps);
    REQUIRE(s.d == 1);
    return static_cast<long long>(s.n);
}

inline std::map<std::string, long long> oracle_div(const PLFunction& f) {
    const Curve& c = *f.curve();
    std::set<PointRef> cands;
    for (std::size_t v = 0; v < c.num_vertices(); ++v) cands.insert(PointRef::vertex(v));
    for (std::size_t e = 0; e < c.num_edges(); ++e)
        for (const auto& t : f.profile(e).t) cands.insert(c.edge_point(e, t));
    std::map<std::string, long long> out;
    for (const auto& p : cands) {
        long long sum = 0;
        for (const auto& d : c.directions(p)) sum += fd_slope(f, p, d);
        if (sum != 0) out[c.point_name(p)] = sum;
    }
    return out;
}

}  // namespace fn_oracle
