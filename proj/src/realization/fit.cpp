#include <algorithm>
#include <array>
#include <map>

#include "tropcurve/errors.hpp"
#include "tropcurve/hypersurface.hpp"
#include "tropcurve/realization.hpp"

namespace tropcurve {

namespace {

std::string point_text(const RatVec& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + to_string(p[i]);
    return s + ")";
}

struct Cell {
    CellGeom geom;
    IntVec dir;
    Int weight;
};

std::vector<Cell> cells_of(const PolyComplex1D& k) {
    auto geo = cell_geometry(k);
    std::vector<Cell> out;
    for (std::size_t i = 0; i < geo.size(); ++i) {
        Int w = i < k.segments.size() ? k.segments[i].weight : k.rays[i - k.segments.size()].weight;
        out.push_back({geo[i], primitive_direction(geo[i].u), w});
    }
    return out;
}

bool is_vertex(const PolyComplex1D& k, const RatVec& p) {
    return std::find(k.vertices.begin(), k.vertices.end(), p) != k.vertices.end();
}

// Exponent and coefficient of the region containing the path's end, starting from (0,0) and 0.
struct Region {
    IntVec e{0, 0};
    Rational c = 0;
};

std::optional<Region> walk(const PolyComplex1D& k, const std::vector<Cell>& cells, const std::vector<RatVec>& path) {
    Region r;
    for (std::size_t leg = 0; leg + 1 < path.size(); ++leg) {
        RatVec u = sub(path[leg + 1], path[leg]);
        if (u[0] == 0 && u[1] == 0) continue;
        CellGeom g{path[leg], u, false};
        std::vector<std::pair<Rational, std::size_t>> hits;
        std::vector<RatVec> where(cells.size());
        for (std::size_t i = 0; i < cells.size(); ++i) {
            CellHit h = intersect_cells(g, cells[i].geom);
            if (h.kind == CellHit::Kind::None) continue;
            if (h.kind == CellHit::Kind::Overlap || h.s == 0 || h.s == 1 || is_vertex(k, h.point)) return std::nullopt;
            hits.push_back({h.s, i});
            where[i] = h.point;
        }
        std::sort(hits.begin(), hits.end());
        for (const auto& [s, i] : hits) {
            const Cell& cell = cells[i];
            IntVec n{cell.dir[1], -cell.dir[0]};
            if (u[0] * n[0] + u[1] * n[1] < 0) n = {-n[0], -n[1]};
            r.e[0] += cell.weight * n[0];
            r.e[1] += cell.weight * n[1];
            r.c -= cell.weight * (n[0] * where[i][0] + n[1] * where[i][1]);
        }
    }
    return r;
}

}  // namespace

TropPoly fit_tropical_polynomial(const PolyComplex1D& k0) {
    validate_structure(k0);
    if (k0.dim != 2) throw TropError("fitting needs a complex in the plane");
    if (!complex_problems(k0).empty()) throw TropError("not a complex: " + complex_problems(k0).front());
    if (!check_balanced(k0).balanced) throw TropError("complex is not balanced");
    if (!is_connected(k0)) throw TropError("complex is not connected");
    PolyComplex1D k = canonical_complex(k0);
    if (k.segments.empty() && k.rays.empty()) throw TropError("complex is a single point");
    if (k.segments.size() + k.rays.size() > kMaxFitCells)
        throw TropError("complex has more than " + std::to_string(kMaxFitCells) + " cells");
    auto cells = cells_of(k);

    // Far enough along the diagonal that the region containing (-M,-M) no longer changes.
    Rational M = 1;
    for (const auto& v : k.vertices)
        for (const auto& x : v) M = std::max(M, Rational(abs(x) + 1));
    for (const auto& r : k.rays) {
        if (r.dir[0] == r.dir[1]) continue;
        const RatVec& v = k.vertices[r.from];
        Rational s = (v[1] - v[0]) / (r.dir[0] - r.dir[1]);
        if (s >= 0) M = std::max(M, Rational(abs(v[0] + s * r.dir[0]) + 1));
    }
    // (-M,-M) itself may sit on a diagonal ray; then take the region just below it.
    RatVec base{-M, -M};
    for (const auto& c : cells) {
        RatVec w = sub(base, c.geom.p);
        if (w[0] * c.geom.u[1] != w[1] * c.geom.u[0]) continue;
        Rational s = (w[0] * c.geom.u[0] + w[1] * c.geom.u[1]) / (c.geom.u[0] * c.geom.u[0] + c.geom.u[1] * c.geom.u[1]);
        if (s >= 0 && (c.geom.ray || s <= 1)) {
            base = {-M, -M - 1};
            break;
        }
    }

    // Sample points on both sides of every cell.
    std::vector<RatVec> samples{base};
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const Cell& c = cells[i];
        RatVec mid = c.geom.ray ? add_scaled(c.geom.p, c.dir, Rational(1))
                                : RatVec{c.geom.p[0] + c.geom.u[0] / 2, c.geom.p[1] + c.geom.u[1] / 2};
        IntVec n{c.dir[1], -c.dir[0]};
        Rational eps = 1;
        for (int tries = 0;; ++tries) {
            if (tries > 200) throw TropError("internal: no clear side point near a cell");
            RatVec lo = add_scaled(mid, n, -eps);
            RatVec span{2 * eps * n[0], 2 * eps * n[1]};
            bool clear = true;
            for (std::size_t j = 0; j < cells.size() && clear; ++j)
                if (j != i) clear = intersect_cells(CellGeom{lo, span, false}, cells[j].geom).kind == CellHit::Kind::None;
            if (clear) break;
            eps /= 2;
        }
        samples.push_back(add_scaled(mid, n, eps));
        samples.push_back(add_scaled(mid, n, -eps));
    }

    static const std::array<std::array<int, 4>, 8> kVia{{{3, 7, -5, 11}, {-2, 9, 4, 13}, {5, 3, 1, 17}, {-7, 5, -3, 19},
                                                        {1, 23, 11, 7}, {13, 5, -17, 3}, {-19, 4, 23, 6}, {29, 8, -2, 31}}};
    std::map<IntVec, Rational> terms;
    for (const auto& q : samples) {
        std::vector<std::pair<RatVec, Region>> found;
        if (auto r = walk(k, cells, {base, q})) found.push_back({q, *r});
        for (const auto& v : kVia) {
            if (found.size() >= 2) break;
            RatVec via{M * 4 * make_rational(v[0], v[1]), M * 4 * make_rational(v[2], v[3])};
            if (auto r = walk(k, cells, {base, via, q})) found.push_back({via, *r});
        }
        if (found.empty()) throw TropError("internal: no generic path to " + point_text(q));
        if (found.size() == 2 && (found[0].second.e != found[1].second.e || found[0].second.c != found[1].second.c))
            throw TropError("not a tropical curve: propagation around the cycle " + point_text(base) + " -> " +
                            point_text(found[0].first) + " -> " + point_text(q) + " -> " + point_text(found[1].first) +
                            " is inconsistent");
        const Region& r = found[0].second;
        auto [it, fresh] = terms.emplace(r.e, r.c);
        if (!fresh && it->second != r.c)
            throw TropError("not a tropical curve: region with exponent (" + std::to_string(r.e[0]) + "," +
                            std::to_string(r.e[1]) + ") gets two coefficients");
    }
    Int m0 = terms.begin()->first[0], m1 = terms.begin()->first[1];
    for (const auto& [e, c] : terms) {
        m0 = std::min(m0, e[0]);
        m1 = std::min(m1, e[1]);
    }
    TropPoly::Terms shifted;
    for (const auto& [e, c] : terms) shifted[{e[0] - m0, e[1] - m1}] = c;
    TropPoly f(2, shifted);
    if (hypersurface2(f, auto_window(f)) != k) throw TropError("internal: fitted polynomial does not reproduce the complex");
    return f;
}

std::vector<IntersectionPoint> intersect(const PolyComplex1D& a0, const PolyComplex1D& b0) {
    validate_structure(a0);
    validate_structure(b0);
    if (a0.dim != 2 || b0.dim != 2) throw TropError("intersection needs two complexes in the plane");
    PolyComplex1D a = canonical_complex(a0), b = canonical_complex(b0);
    auto ca = cells_of(a), cb = cells_of(b);
    auto valence = [](const PolyComplex1D& k, const RatVec& p) {
        std::size_t v = std::find(k.vertices.begin(), k.vertices.end(), p) - k.vertices.begin(), n = 0;
        for (const auto& s : k.segments) n += (s.a == v) + (s.b == v);
        for (const auto& r : k.rays) n += r.from == v;
        return n;
    };
    // Outgoing (direction, weight) pairs at a vertex of k.
    auto star = [](const PolyComplex1D& k, const RatVec& p) {
        std::size_t v = std::find(k.vertices.begin(), k.vertices.end(), p) - k.vertices.begin();
        std::vector<std::pair<IntVec, Int>> out;
        for (const auto& s : k.segments) {
            if (s.a == v) out.push_back({primitive_direction(sub(k.vertices[s.b], p)), s.weight});
            if (s.b == v) out.push_back({primitive_direction(sub(k.vertices[s.a], p)), s.weight});
        }
        for (const auto& r : k.rays)
            if (r.from == v) out.push_back({r.dir, r.weight});
        return out;
    };
    auto check_side = [&](const PolyComplex1D& k, const RatVec& z, const char* which) {
        if (!is_vertex(k, z)) return;
        std::size_t n = valence(k, z);
        if (n != 2)
            throw TropError("non-transversal intersection at " + point_text(z) + ": condition (2) fails, a vertex of valence " +
                            std::to_string(n) + " of the " + which + " complex");
        // the one vertex kept on a straight line is not a bend
        auto st = star(k, z);
        if (st[0].second == st[1].second && st[0].first[0] == -st[1].first[0] && st[0].first[1] == -st[1].first[1]) return;
        throw TropError("non-transversal intersection at " + point_text(z) + ": condition (3) fails, a bend of the " +
                        which + " complex");
    };
    std::map<RatVec, Int> found;
    for (const auto& x : ca)
        for (const auto& y : cb) {
            CellHit h = intersect_cells(x.geom, y.geom);
            if (h.kind == CellHit::Kind::None) continue;
            if (h.kind == CellHit::Kind::Overlap)
                throw TropError("non-transversal intersection at " + point_text(h.point) +
                                ": condition (4) fails, the complexes overlap");
            check_side(a, h.point, "first");
            check_side(b, h.point, "second");
            Int det = x.weight * y.weight * (x.dir[0] * y.dir[1] - x.dir[1] * y.dir[0]);
            if (det == 0)
                throw TropError("non-transversal intersection at " + point_text(h.point) +
                                ": condition (4) fails, parallel directions");
            found[h.point] = det < 0 ? -det : det;  // locally two straight lines, so one crossing per point
        }
    std::vector<IntersectionPoint> out;
    for (const auto& [p, m] : found) out.push_back({p, m});
    return out;
}

BezoutReport bezout_check(const PolyComplex1D& a, const PolyComplex1D& b) {
    BezoutReport r;
    for (const auto& p : intersect(a, b)) r.sum += p.mult;
    r.bound = *poly_degree(fit_tropical_polynomial(a)) * *poly_degree(fit_tropical_polynomial(b));
    return r;
}

}  // namespace tropcurve
