#include "tropcurve/hypersurface.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "tropcurve/errors.hpp"

namespace tropcurve {

namespace {

struct Term {
    IntVec e;
    Rational c;
};

// Line c + a.x = 0 with (a, c) scaled so that gcd(a) = 1 and a is lexicographically positive.
struct Line {
    IntVec a;
    Rational c;
    friend bool operator<(const Line& x, const Line& y) { return std::tie(x.a, x.c) < std::tie(y.a, y.c); }
};

Line equality_line(const Term& s, const Term& t) {
    IntVec a{s.e[0] - t.e[0], s.e[1] - t.e[1]};
    Rational c = s.c - t.c;
    Int g = gcd_of(a);
    if (a[0] < 0 || (a[0] == 0 && a[1] < 0)) g = -g;
    return Line{{a[0] / g, a[1] / g}, c / make_rational(g)};
}

std::vector<Term> terms_of(const TropPoly& f) {
    if (f.vars() != 2) throw TropError("hypersurface2 needs a polynomial in 2 variables");
    if (f.is_neg_inf() || f.is_monomial()) throw TropError("empty hypersurface");
    if (f.terms().size() > kMaxHypersurfaceTerms)
        throw TropError("more than " + std::to_string(kMaxHypersurfaceTerms) + " terms");
    std::vector<Term> t;
    for (const auto& [e, c] : f.terms()) t.push_back({e, c});
    return t;
}

std::vector<std::size_t> argmax(const std::vector<Term>& terms, const RatVec& x) {
    std::vector<std::size_t> best;
    Rational bv;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        Rational v = terms[i].c + make_rational(terms[i].e[0]) * x[0] + make_rational(terms[i].e[1]) * x[1];
        if (best.empty() || v > bv) {
            best = {i};
            bv = v;
        } else if (v == bv) {
            best.push_back(i);
        }
    }
    return best;
}

bool collinear(const std::vector<Term>& terms, const std::vector<std::size_t>& idx) {
    if (idx.size() < 3) return true;
    const IntVec& o = terms[idx[0]].e;
    const IntVec& p = terms[idx[1]].e;
    for (std::size_t k = 2; k < idx.size(); ++k) {
        const IntVec& q = terms[idx[k]].e;
        if ((p[0] - o[0]) * (q[1] - o[1]) != (p[1] - o[1]) * (q[0] - o[0])) return false;
    }
    return true;
}

std::vector<RatVec> vertices_of(const std::vector<Term>& terms) {
    std::set<RatVec> found;
    // A vertex maximizes three non-collinear terms i, j, k, so it lies on L_ij ∩ L_ik.
    for (std::size_t i = 0; i < terms.size(); ++i)
        for (std::size_t j = 0; j < terms.size(); ++j)
            for (std::size_t k = j + 1; k < terms.size(); ++k) {
                if (j == i || k == i) continue;
                Line l1 = equality_line(terms[i], terms[j]);
                Line l2 = equality_line(terms[i], terms[k]);
                Int det = l1.a[0] * l2.a[1] - l1.a[1] * l2.a[0];
                if (det == 0) continue;
                Rational d = make_rational(det);
                RatVec x{(-l1.c * make_rational(l2.a[1]) + l2.c * make_rational(l1.a[1])) / d,
                         (-l2.c * make_rational(l1.a[0]) + l1.c * make_rational(l2.a[0])) / d};
                if (found.count(x)) continue;
                auto am = argmax(terms, x);
                if (!collinear(terms, am)) found.insert(x);
            }
    return {found.begin(), found.end()};
}

}  // namespace

std::vector<RatVec> hypersurface_vertices(const TropPoly& f) { return vertices_of(terms_of(f)); }

Window auto_window(const TropPoly& f, const Rational& margin) {
    auto vs = hypersurface_vertices(f);
    Window w{-margin, margin, -margin, margin};
    for (const auto& v : vs) {
        w.xmin = std::min(w.xmin, Rational(v[0] - margin));
        w.xmax = std::max(w.xmax, Rational(v[0] + margin));
        w.ymin = std::min(w.ymin, Rational(v[1] - margin));
        w.ymax = std::max(w.ymax, Rational(v[1] + margin));
    }
    return w;
}

PolyComplex1D hypersurface2(const TropPoly& f, const Window& window) {
    auto terms = terms_of(f);
    auto verts = vertices_of(terms);
    for (const auto& v : verts)
        if (v[0] < window.xmin || v[0] > window.xmax || v[1] < window.ymin || v[1] > window.ymax)
            throw TropError("window too small: vertex (" + to_string(v[0]) + "," + to_string(v[1]) +
                            ") escapes");

    std::set<Line> lines;
    for (std::size_t i = 0; i < terms.size(); ++i)
        for (std::size_t j = i + 1; j < terms.size(); ++j) lines.insert(equality_line(terms[i], terms[j]));

    PolyComplex1D out;
    out.dim = 2;
    out.vertices = verts;
    std::map<RatVec, std::size_t> vindex;
    for (std::size_t i = 0; i < verts.size(); ++i) vindex[verts[i]] = i;
    auto vertex_id = [&](const RatVec& p) {
        auto [it, fresh] = vindex.emplace(p, out.vertices.size());
        if (fresh) out.vertices.push_back(p);
        return it->second;
    };

    for (const Line& line : lines) {
        IntVec d{-line.a[1], line.a[0]};
        RatVec dr{make_rational(d[0]), make_rational(d[1])};
        // the point of the line nearest the origin, as a base for sampling
        Rational aa = make_rational(line.a[0] * line.a[0] + line.a[1] * line.a[1]);
        RatVec base{-line.c * make_rational(line.a[0]) / aa, -line.c * make_rational(line.a[1]) / aa};
        std::vector<std::pair<Rational, std::size_t>> on;  // parameter along d, vertex index
        for (std::size_t v = 0; v < verts.size(); ++v) {
            const RatVec& p = verts[v];
            if (line.c + make_rational(line.a[0]) * p[0] + make_rational(line.a[1]) * p[1] != 0) continue;
            on.push_back({dr[0] * (p[0] - base[0]) + dr[1] * (p[1] - base[1]), v});
        }
        std::sort(on.begin(), on.end());
        Rational dd = make_rational(d[0] * d[0] + d[1] * d[1]);
        auto point_at = [&](const Rational& t) {
            return RatVec{base[0] + t / dd * dr[0], base[1] + t / dd * dr[1]};
        };
        // edge weight if the sample point lies on an edge carried by this line, else 0
        auto weight_at = [&](const RatVec& q) -> Int {
            auto am = argmax(terms, q);
            if (am.size() < 2) return 0;
            IntVec lo = terms[am[0]].e, hi = lo;
            for (auto i : am) {
                lo = std::min(lo, terms[i].e);
                hi = std::max(hi, terms[i].e);
            }
            IntVec diff{hi[0] - lo[0], hi[1] - lo[1]};
            Int g = gcd_of(diff);
            if (diff[0] / g * line.a[1] != diff[1] / g * line.a[0]) return 0;
            return g;
        };
        if (on.empty()) {
            Int w = weight_at(base);
            if (w == 0) continue;
            std::size_t v = vertex_id(base);
            out.rays.push_back({v, d, w});
            out.rays.push_back({v, IntVec{-d[0], -d[1]}, w});
            continue;
        }
        if (Int w = weight_at(point_at(on.front().first - dd)); w > 0)
            out.rays.push_back({on.front().second, IntVec{-d[0], -d[1]}, w});
        if (Int w = weight_at(point_at(on.back().first + dd)); w > 0)
            out.rays.push_back({on.back().second, d, w});
        for (std::size_t i = 0; i + 1 < on.size(); ++i) {
            Rational mid = (on[i].first + on[i + 1].first) / 2;
            if (Int w = weight_at(point_at(mid)); w > 0)
                out.segments.push_back({on[i].second, on[i + 1].second, w});
        }
    }
    return canonical_complex(out);
}

}  // namespace tropcurve
