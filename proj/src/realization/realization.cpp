#include "tropcurve/realization.hpp"

#include <map>
#include <set>

#include "tropcurve/errors.hpp"
#include "tropcurve/rat_fun.hpp"

namespace tropcurve {

namespace {

RatVec theta(const std::vector<PLFunction>& fs, const PointRef& p) {
    RatVec out;
    for (const auto& f : fs) out.push_back(eval(f, p).value());
    return out;
}

IntVec negated(IntVec v) {
    for (Int& x : v) x = -x;
    return v;
}

bool is_zero(const IntVec& v) {
    return std::all_of(v.begin(), v.end(), [](Int x) { return x == 0; });
}

CellGeom piece_geometry(const RealizationMap::Piece& p) {
    RatVec u;
    Rational len = p.to.finite() ? Rational(p.to.value() - p.from) : Rational(1);
    for (Int s : p.slopes) u.push_back(len * s);
    return CellGeom{p.start, u, !p.to.finite()};
}

}  // namespace

Int RealizationMap::Piece::expansion() const { return gcd_of(slopes); }

RealizationMap realize(const CurvePtr& c, const std::vector<PLFunction>& fs) {
    if (fs.empty()) throw TropError("realization needs at least one function");
    for (const auto& f : fs) {
        if (f.is_neg_inf()) throw TropError("cannot realize with the -inf function");
        if (*f.curve() != *c) throw TropError("function does not live on the realized curve");
    }
    RealizationMap r{c, fs, {}, {}, {}, {}};
    const Curve& cv = *c;
    std::set<PointRef> skel;
    for (std::size_t v = 0; v < cv.num_vertices(); ++v)
        if (!cv.vertex(v).at_infinity) skel.insert(PointRef::vertex(v));

    PolyComplex1D raw;
    raw.dim = fs.size();
    std::map<RatVec, std::size_t> vid;
    auto vertex_of = [&](const RatVec& p) {
        auto [it, fresh] = vid.emplace(p, raw.vertices.size());
        if (fresh) raw.vertices.push_back(p);
        return it->second;
    };

    for (std::size_t e = 0; e < cv.num_edges(); ++e) {
        std::set<Rational> ts;
        for (const auto& f : fs)
            for (const auto& t : breakpoints(f, e)) ts.insert(t);
        std::vector<Rational> cuts(ts.begin(), ts.end());
        for (const auto& t : cuts) skel.insert(cv.edge_point(e, t));
        for (std::size_t i = 0; i < cuts.size(); ++i) {
            bool last = i + 1 == cuts.size();
            if (last && !cv.is_infinite(e)) break;
            RealizationMap::Piece p{e, cuts[i], last ? Extended::pos_inf() : Extended(cuts[i + 1]), {},
                                    theta(fs, cv.edge_point(e, cuts[i]))};
            for (const auto& f : fs) p.slopes.push_back(f.profile(e).slope_after(cuts[i]));
            r.pieces.push_back(p);
            if (is_zero(p.slopes)) continue;
            std::size_t a = vertex_of(p.start);
            if (last) {
                raw.rays.push_back({a, primitive_direction(p.slopes), p.expansion()});
            } else {
                std::size_t b = vertex_of(theta(fs, cv.edge_point(e, cuts[i + 1])));
                raw.segments.push_back({a, b, p.expansion()});
            }
        }
    }
    for (const auto& p : skel) {
        r.skeleton.push_back(p);
        r.skeleton_image.push_back(theta(fs, p));
        vertex_of(r.skeleton_image.back());
    }
    r.image = canonical_complex(raw);
    return r;
}

RealizationReport check_realization(const RealizationMap& r) {
    RealizationReport rep;
    const Curve& c = *r.curve;
    auto note = [&](bool& flag, std::string msg) {
        flag = false;
        rep.notes.push_back(std::move(msg));
    };

    // injectivity: skeleton points, collapsed pieces, then pairwise piece intersections
    std::map<RatVec, std::size_t> seen;
    for (std::size_t i = 0; i < r.skeleton.size(); ++i) {
        auto [it, fresh] = seen.emplace(r.skeleton_image[i], i);
        if (!fresh)
            note(rep.injective, "points " + c.point_name(r.skeleton[it->second]) + " and " + c.point_name(r.skeleton[i]) +
                                    " have the same image");
    }
    std::vector<CellGeom> geo;
    std::vector<std::size_t> live;
    for (std::size_t i = 0; i < r.pieces.size(); ++i) {
        const auto& p = r.pieces[i];
        if (is_zero(p.slopes)) {
            if (!p.to.finite()) note(rep.injective, "ray '" + c.edge(p.edge).id + "' collapses to a point");
            continue;
        }
        geo.push_back(piece_geometry(p));
        live.push_back(i);
    }
    auto is_end = [](const CellGeom& g, const Rational& s) { return s == 0 || (!g.ray && s == 1); };
    for (std::size_t a = 0; a < geo.size(); ++a)
        for (std::size_t b = a + 1; b < geo.size(); ++b) {
            CellHit h = intersect_cells(geo[a], geo[b]);
            if (h.kind == CellHit::Kind::None) continue;
            if (h.kind == CellHit::Kind::Point && is_end(geo[a], h.s) && is_end(geo[b], h.t)) continue;
            const auto& pa = r.pieces[live[a]];
            const auto& pb = r.pieces[live[b]];
            note(rep.injective, "images of pieces of '" + c.edge(pa.edge).id + "' and '" + c.edge(pb.edge).id + "' " +
                                    (h.kind == CellHit::Kind::Overlap ? "overlap" : "cross"));
        }
    for (std::size_t i = 0; i < r.skeleton.size(); ++i)
        for (std::size_t a = 0; a < geo.size(); ++a) {
            CellGeom pt{r.skeleton_image[i], RatVec(r.skeleton_image[i].size(), Rational(0)), false};
            // a point lies on a cell iff the cell minus its end contains it; test with a degenerate probe
            RatVec w = sub(pt.p, geo[a].p);
            std::optional<Rational> s;
            bool on = true;
            for (std::size_t k = 0; k < w.size() && on; ++k) {
                if (geo[a].u[k] == 0) {
                    on = w[k] == 0;
                    continue;
                }
                Rational sk = w[k] / geo[a].u[k];
                if (s && *s != sk) on = false;
                s = sk;
            }
            if (!on || !s || *s <= 0 || (!geo[a].ray && *s >= 1)) continue;
            note(rep.injective, "point " + c.point_name(r.skeleton[i]) + " lands inside the image of an edge piece of '" +
                                    c.edge(r.pieces[live[a]].edge).id + "'");
        }

    for (const auto& p : r.pieces)
        if (p.expansion() != 1)
            note(rep.local_isometry, "piece of '" + c.edge(p.edge).id + "' from " + to_string(p.from) +
                                         " has expansion factor " + std::to_string(p.expansion()));

    // image directions of rays, grouped by source class
    std::map<std::string, std::set<IntVec>> by_class;
    std::map<IntVec, std::set<std::string>> by_dir;
    std::vector<std::pair<RatVec, IntVec>> image_rays;
    for (const auto& p : r.pieces) {
        if (p.to.finite()) continue;
        IntVec d = is_zero(p.slopes) ? p.slopes : primitive_direction(p.slopes);
        const std::string& label = c.ray_class(p.edge);
        by_class[label].insert(d);
        by_dir[d].insert(label);
        if (!is_zero(d)) image_rays.push_back({p.start, d});
    }
    for (const auto& [label, dirs] : by_class)
        if (dirs.size() > 1) note(rep.parallel_respected, "rays of class '" + label + "' point in different directions");
    for (const auto& [d, labels] : by_dir)
        if (labels.size() > 1) note(rep.parallel_respected, "rays of different classes share an image direction");

    for (std::size_t a = 0; a < image_rays.size(); ++a)
        for (std::size_t b = a + 1; b < image_rays.size(); ++b) {
            if (image_rays[a].second != image_rays[b].second) continue;
            CellGeom ga{image_rays[a].first, RatVec(image_rays[a].second.begin(), image_rays[a].second.end()), true};
            CellGeom gb{image_rays[b].first, RatVec(image_rays[b].second.begin(), image_rays[b].second.end()), true};
            if (intersect_cells(ga, gb).kind != CellHit::Kind::Overlap)
                note(rep.condition5_free, "two image rays share a direction without one containing the other");
        }
    return rep;
}

BalanceReport check_balanced(const PolyComplex1D& k) {
    validate_structure(k);
    BalanceReport rep;
    rep.defects.assign(k.vertices.size(), IntVec(k.dim, 0));
    auto add = [&](std::size_t v, const IntVec& d, Int w) {
        for (std::size_t i = 0; i < k.dim; ++i) rep.defects[v][i] += w * d[i];
    };
    for (const auto& s : k.segments) {
        IntVec d = primitive_direction(sub(k.vertices[s.b], k.vertices[s.a]));
        add(s.a, d, s.weight);
        add(s.b, negated(d), s.weight);
    }
    for (const auto& r : k.rays) add(r.from, r.dir, r.weight);
    for (const auto& d : rep.defects)
        if (!is_zero(d)) rep.balanced = false;
    return rep;
}

HarmonicReport harmonic_realization_check(const RealizationMap& r) {
    if (!check_realization(r).injective) throw TropError("realization is not injective");
    HarmonicReport rep;
    for (const auto& p : r.skeleton) {
        HarmonicReport::Row row{r.curve->point_name(p), {}};
        for (const auto& f : r.fs) {
            bool h = is_harmonic_at(f, p);
            row.harmonic.push_back(h);
            rep.all_harmonic = rep.all_harmonic && h;
        }
        rep.table.push_back(std::move(row));
    }
    rep.balance = check_balanced(r.image);
    return rep;
}

Ingested ingest_balanced(const PolyComplex1D& k0) {
    validate_structure(k0);
    if (!complex_problems(k0).empty()) throw TropError("not a complex: " + complex_problems(k0).front());
    if (!check_balanced(k0).balanced) throw TropError("complex is not balanced");
    if (!is_connected(k0)) throw TropError("complex is not connected");
    PolyComplex1D k = canonical_complex(k0);

    CurveDescription d;
    for (std::size_t v = 0; v < k.vertices.size(); ++v) d.vertices.push_back({"v" + std::to_string(v), false});
    std::vector<std::map<std::string, UserProfile>> profiles(k.dim);
    for (std::size_t i = 0; i < k.segments.size(); ++i) {
        const auto& s = k.segments[i];
        RatVec delta = sub(k.vertices[s.b], k.vertices[s.a]);
        Rational len = lattice_length(delta) / s.weight;
        std::string id = "s" + std::to_string(i);
        d.edges.push_back({id, "v" + std::to_string(s.a), "v" + std::to_string(s.b), Extended(len)});
        for (std::size_t j = 0; j < k.dim; ++j)
            profiles[j][id] = UserProfile{{{Rational(0), k.vertices[s.a][j]}, {len, k.vertices[s.b][j]}}, 0};
    }
    for (std::size_t i = 0; i < k.rays.size(); ++i) {
        const auto& r = k.rays[i];
        std::string id = "r" + std::to_string(i), label = "dir";
        for (Int x : r.dir) label += "_" + std::to_string(x);
        d.edges.push_back({id, "v" + std::to_string(r.from), std::nullopt, Extended::pos_inf()});
        d.ray_classes[id] = label;
        for (std::size_t j = 0; j < k.dim; ++j)
            profiles[j][id] = UserProfile{{{Rational(0), k.vertices[r.from][j]}}, r.weight * r.dir[j]};
    }
    Ingested out{build_curve(d), {}, {}};
    for (std::size_t j = 0; j < k.dim; ++j) {
        std::map<std::string, Rational> isolated;
        if (k.segments.empty() && k.rays.empty()) isolated["v0"] = k.vertices[0][j];
        out.fs.push_back(make_function(out.curve, profiles[j], isolated));
    }
    out.realization = realize(out.curve, out.fs);
    for (const auto& p : out.realization.skeleton)
        for (const auto& f : out.fs)
            if (!is_harmonic_at(f, p)) throw TropError("internal: coordinate function not harmonic at " + out.curve->point_name(p));
    if (out.realization.image != k) throw TropError("internal: realization does not reproduce the complex");
    return out;
}

}  // namespace tropcurve
