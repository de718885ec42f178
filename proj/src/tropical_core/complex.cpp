#include "tropcurve/complex.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>

#include "tropcurve/errors.hpp"

namespace tropcurve {

IntVec primitive_direction(const RatVec& v) {
    mpz_class l = 1;
    for (const auto& x : v) l = lcm(l, x.get_den());
    std::vector<mpz_class> z;
    mpz_class g = 0;
    for (const auto& x : v) {
        z.push_back(x.get_num() * (l / x.get_den()));
        g = gcd(g, z.back());
    }
    if (g == 0) throw TropError("zero vector has no direction");
    IntVec out;
    for (auto& x : z) {
        mpz_class q = x / g;
        if (!q.fits_slong_p()) throw TropError("direction component out of range");
        out.push_back(q.get_si());
    }
    return out;
}

IntVec primitive_direction(const IntVec& v) {
    Int g = gcd_of(v);
    if (g == 0) throw TropError("zero vector has no direction");
    IntVec out(v);
    for (Int& x : out) x /= g;
    return out;
}

Rational lattice_length(const RatVec& v) {
    IntVec d = primitive_direction(v);
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] != 0) return v[i] / make_rational(d[i]);
    return 0;
}

RatVec sub(const RatVec& a, const RatVec& b) {
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

RatVec add_scaled(const RatVec& p, const IntVec& d, const Rational& t) {
    RatVec r(p);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += t * make_rational(d[i]);
    return r;
}

namespace {

RatVec to_rat(const IntVec& v) {
    RatVec r;
    for (Int x : v) r.push_back(make_rational(x));
    return r;
}

bool parallel(const RatVec& a, const RatVec& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            if (a[i] * b[j] != a[j] * b[i]) return false;
    return true;
}

Rational dot(const RatVec& a, const RatVec& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

RatVec at(const CellGeom& c, const Rational& s) {
    RatVec r(c.p);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += s * c.u[i];
    return r;
}

bool in_range(const CellGeom& c, const Rational& s) { return s >= 0 && (c.ray || s <= 1); }

}  // namespace

CellHit intersect_cells(const CellGeom& a, const CellGeom& b) {
    CellHit hit;
    const std::size_t n = a.p.size();
    RatVec w = sub(b.p, a.p);
    if (!parallel(a.u, b.u)) {
        // p + s u = q + t v  <=>  s u - t v = w; solve on a nonsingular 2x2 minor, then check all rows.
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                Rational det = -a.u[i] * b.u[j] + a.u[j] * b.u[i];
                if (det == 0) continue;
                Rational s = (-w[i] * b.u[j] + w[j] * b.u[i]) / det;
                Rational t = (a.u[i] * w[j] - a.u[j] * w[i]) / det;
                RatVec pa = at(a, s);
                if (pa != at(b, t) || !in_range(a, s) || !in_range(b, t)) return hit;
                hit.kind = CellHit::Kind::Point;
                hit.point = pa;
                hit.s = s;
                hit.t = t;
                return hit;
            }
        return hit;
    }
    if (!parallel(w, a.u)) return hit;
    // Collinear: express b's parameter range in a's parameter.
    Rational uu = dot(a.u, a.u);
    Rational s0 = dot(w, a.u) / uu;          // b.p
    Rational ds = dot(b.u, a.u) / uu;        // per unit t
    std::optional<Rational> a_hi = a.ray ? std::nullopt : std::optional<Rational>(Rational(1));
    // b covers s in [s0, s0+ds] (segment) or [s0, inf)/(-inf, s0] (ray).
    std::optional<Rational> lo, hi;
    if (b.ray) {
        if (ds > 0) lo = s0; else hi = s0;
    } else {
        lo = std::min(s0, Rational(s0 + ds));
        hi = std::max(s0, Rational(s0 + ds));
    }
    Rational L = lo ? std::max(Rational(0), *lo) : Rational(0);
    std::optional<Rational> H = a_hi;
    if (hi) H = H ? std::min(*H, *hi) : *hi;
    if (H && *H < L) return hit;
    hit.point = at(a, L);
    hit.s = L;
    hit.t = (L - s0) / ds;
    hit.kind = (H && *H == L) ? CellHit::Kind::Point : CellHit::Kind::Overlap;
    return hit;
}

std::vector<CellGeom> cell_geometry(const PolyComplex1D& k) {
    std::vector<CellGeom> cells;
    for (const auto& s : k.segments)
        cells.push_back(CellGeom{k.vertices[s.a], sub(k.vertices[s.b], k.vertices[s.a]), false});
    for (const auto& r : k.rays) cells.push_back(CellGeom{k.vertices[r.from], to_rat(r.dir), true});
    return cells;
}

void validate_structure(const PolyComplex1D& k) {
    if (k.dim == 0) throw TropError("complex of dimension 0");
    for (const auto& v : k.vertices)
        if (v.size() != k.dim) throw TropError("vertex of wrong dimension");
    const std::size_t nv = k.vertices.size();
    for (const auto& s : k.segments) {
        if (s.a >= nv || s.b >= nv) throw TropError("segment references a missing vertex");
        if (s.weight <= 0) throw TropError("nonpositive segment weight");
        if (k.vertices[s.a] == k.vertices[s.b]) throw TropError("degenerate segment");
    }
    for (const auto& r : k.rays) {
        if (r.from >= nv) throw TropError("ray references a missing vertex");
        if (r.weight <= 0) throw TropError("nonpositive ray weight");
        if (r.dir.size() != k.dim) throw TropError("ray direction of wrong dimension");
        if (gcd_of(r.dir) != 1) throw TropError("ray direction is not primitive");
    }
}

std::vector<std::string> complex_problems(const PolyComplex1D& k) {
    validate_structure(k);
    std::vector<std::string> problems;
    auto cells = cell_geometry(k);
    const std::size_t ns = k.segments.size();
    auto endpoints = [&](std::size_t c) {
        std::vector<std::size_t> e;
        if (c < ns) e = {k.segments[c].a, k.segments[c].b};
        else e = {k.rays[c - ns].from};
        return e;
    };
    for (std::size_t i = 0; i < cells.size(); ++i)
        for (std::size_t j = i + 1; j < cells.size(); ++j) {
            CellHit h = intersect_cells(cells[i], cells[j]);
            if (h.kind == CellHit::Kind::None) continue;
            bool shared = false;
            if (h.kind == CellHit::Kind::Point)
                for (auto a : endpoints(i))
                    for (auto b : endpoints(j))
                        if (a == b && k.vertices[a] == h.point) shared = true;
            if (!shared) {
                std::ostringstream os;
                os << "cells " << i << " and " << j << (h.kind == CellHit::Kind::Overlap ? " overlap" : " cross")
                   << " at (";
                for (std::size_t c = 0; c < h.point.size(); ++c) os << (c ? "," : "") << to_string(h.point[c]);
                os << ")";
                problems.push_back(os.str());
            }
        }
    for (std::size_t v = 0; v < k.vertices.size(); ++v)
        for (std::size_t c = 0; c < cells.size(); ++c) {
            auto e = endpoints(c);
            if (std::find(e.begin(), e.end(), v) != e.end()) continue;
            // A vertex strictly inside a cell it is not an endpoint of.
            const auto& cell = cells[c];
            RatVec w = sub(k.vertices[v], cell.p);
            if (!parallel(w, cell.u)) continue;
            Rational s = dot(w, cell.u) / dot(cell.u, cell.u);
            if (in_range(cell, s) && at(cell, s) == k.vertices[v])
                problems.push_back("vertex " + std::to_string(v) + " lies inside cell " + std::to_string(c));
        }
    return problems;
}

namespace {

struct Cell {
    std::size_t a;
    std::optional<std::size_t> b;  // segment end; empty for a ray
    IntVec dir;                    // used for rays
    Int weight;
};

}  // namespace

PolyComplex1D canonical_complex(const PolyComplex1D& k) {
    validate_structure(k);
    // 1. merge identical points
    std::map<RatVec, std::size_t> index;
    std::vector<RatVec> pts;
    std::vector<std::size_t> remap(k.vertices.size());
    for (std::size_t i = 0; i < k.vertices.size(); ++i) {
        auto [it, fresh] = index.emplace(k.vertices[i], pts.size());
        if (fresh) pts.push_back(k.vertices[i]);
        remap[i] = it->second;
    }
    std::vector<Cell> cells;
    for (const auto& s : k.segments) {
        std::size_t a = remap[s.a], b = remap[s.b];
        if (a > b) std::swap(a, b);
        cells.push_back(Cell{a, b, {}, s.weight});
    }
    for (const auto& r : k.rays) cells.push_back(Cell{remap[r.from], std::nullopt, r.dir, r.weight});

    auto dir_from = [&](const Cell& c, std::size_t v) -> IntVec {
        if (!c.b) return c.dir;
        std::size_t other = (c.a == v) ? *c.b : c.a;
        return primitive_direction(sub(pts[other], pts[v]));
    };

    // 2. collapse collinear 2-valent vertices with equal weights
    for (bool changed = true; changed;) {
        changed = false;
        std::vector<std::vector<std::size_t>> inc(pts.size());
        for (std::size_t c = 0; c < cells.size(); ++c) {
            inc[cells[c].a].push_back(c);
            if (cells[c].b) inc[*cells[c].b].push_back(c);
        }
        for (std::size_t v = 0; v < pts.size() && !changed; ++v) {
            if (inc[v].size() != 2) continue;
            Cell c1 = cells[inc[v][0]], c2 = cells[inc[v][1]];
            if (c1.weight != c2.weight) continue;
            if (!c1.b && !c2.b) continue;
            IntVec d1 = dir_from(c1, v), d2 = dir_from(c2, v);
            IntVec neg(d2);
            for (Int& x : neg) x = -x;
            if (d1 != neg) continue;
            if (!c1.b) std::swap(c1, c2);  // c1 is a segment
            std::size_t far1 = (c1.a == v) ? *c1.b : c1.a;
            Cell merged;
            if (c2.b) {
                std::size_t far2 = (c2.a == v) ? *c2.b : c2.a;
                merged = Cell{std::min(far1, far2), std::max(far1, far2), {}, c1.weight};
            } else {
                merged = Cell{far1, std::nullopt, c2.dir, c1.weight};
            }
            std::size_t i0 = inc[v][0], i1 = inc[v][1];
            cells.erase(cells.begin() + static_cast<std::ptrdiff_t>(std::max(i0, i1)));
            cells.erase(cells.begin() + static_cast<std::ptrdiff_t>(std::min(i0, i1)));
            cells.push_back(merged);
            changed = true;
        }
        if (changed) {
            // the bypassed vertex no longer carries any cell
            std::size_t gone = 0;
            for (std::size_t v = 0; v < pts.size(); ++v)
                if (inc[v].size() == 2) {
                    bool used = false;
                    for (const auto& c : cells) used = used || c.a == v || (c.b && *c.b == v);
                    if (!used) gone = v;
                }
            pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(gone));
            for (auto& c : cells) {
                if (c.a > gone) --c.a;
                if (c.b && *c.b > gone) c.b = *c.b - 1;
            }
        }
    }

    // 3. a vertex carrying exactly two opposite rays of equal weight is a bare line; anchor it
    {
        std::vector<std::vector<std::size_t>> inc(pts.size());
        for (std::size_t c = 0; c < cells.size(); ++c) {
            inc[cells[c].a].push_back(c);
            if (cells[c].b) inc[*cells[c].b].push_back(c);
        }
        for (std::size_t v = 0; v < pts.size(); ++v) {
            if (inc[v].size() != 2) continue;
            const Cell& r1 = cells[inc[v][0]];
            const Cell& r2 = cells[inc[v][1]];
            if (r1.b || r2.b || r1.weight != r2.weight) continue;
            IntVec neg(r2.dir);
            for (Int& x : neg) x = -x;
            if (r1.dir != neg) continue;
            RatVec d = to_rat(r1.dir);
            Rational t = -dot(pts[v], d) / dot(d, d);
            RatVec p(pts[v]);
            for (std::size_t i = 0; i < p.size(); ++i) p[i] += t * d[i];
            pts[v] = p;
        }
    }

    // 4. sort vertices, merge duplicate cells, sort cells
    std::vector<std::size_t> order(pts.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return pts[x] < pts[y]; });
    std::vector<std::size_t> pos(pts.size());
    PolyComplex1D out;
    out.dim = k.dim;
    for (std::size_t i = 0; i < order.size(); ++i) {
        pos[order[i]] = i;
        out.vertices.push_back(pts[order[i]]);
    }
    std::map<std::pair<std::size_t, std::size_t>, Int> segs;
    std::map<std::pair<std::size_t, IntVec>, Int> rays;
    for (const auto& c : cells) {
        if (c.b) {
            std::size_t a = pos[c.a], b = pos[*c.b];
            segs[{std::min(a, b), std::max(a, b)}] += c.weight;
        } else {
            rays[{pos[c.a], c.dir}] += c.weight;
        }
    }
    for (const auto& [key, w] : segs) out.segments.push_back({key.first, key.second, w});
    for (const auto& [key, w] : rays) out.rays.push_back({key.first, key.second, w});
    return out;
}

PolyComplex1D translate(const PolyComplex1D& k, const RatVec& shift) {
    PolyComplex1D out = k;
    for (auto& v : out.vertices)
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += shift[i];
    return out;
}

bool is_connected(const PolyComplex1D& k) {
    if (k.vertices.empty()) return false;
    std::vector<std::size_t> parent(k.vertices.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& s : k.segments) parent[find(s.a)] = find(s.b);
    std::size_t root = find(0);
    for (std::size_t i = 1; i < k.vertices.size(); ++i)
        if (find(i) != root) return false;
    return true;
}

}  // namespace tropcurve
