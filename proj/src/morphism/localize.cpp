#include <set>

#include "tropcurve/errors.hpp"
#include "tropcurve/morphism.hpp"

namespace tropcurve {

std::string direction_id(const Curve& c, const Direction& d) {
    return c.user_position(d.edge, Rational(0)).first + (d.forward ? "+" : "-");
}

Localization::Localization(CurvePtr c, const PointRef& x, const std::vector<std::string>& order)
    : c_(std::move(c)), x_(x) {
    c_->check_point(x_);
    if (c_->is_infinity(x_)) throw TropError("cannot localize at a point at infinity");
    auto dirs = c_->directions(x_);
    if (order.empty()) {
        dirs_ = dirs;
        return;
    }
    if (order.size() != dirs.size())
        throw TropError("direction order lists " + std::to_string(order.size()) + " directions but the point has valence " +
                        std::to_string(dirs.size()));
    std::set<std::string> seen;
    for (const auto& id : order) {
        if (!seen.insert(id).second) throw TropError("direction '" + id + "' is listed twice");
        auto it = std::find_if(dirs.begin(), dirs.end(), [&](const Direction& d) { return direction_id(*c_, d) == id; });
        if (it == dirs.end()) throw TropError("no direction '" + id + "' at " + c_->point_name(x_));
        dirs_.push_back(*it);
    }
}

std::vector<std::string> Localization::order_ids() const {
    std::vector<std::string> out;
    for (const auto& d : dirs_) out.push_back(direction_id(*c_, d));
    return out;
}

Germ Localization::apply(const PLFunction& f) const {
    if (*f.curve() != *c_) throw TropError("function does not live on the localized curve");
    if (f.is_neg_inf()) return Germ::zero(n());
    IntVec slopes;
    for (const auto& d : dirs_) slopes.push_back(outgoing_slope(f, x_, d));
    return Germ(eval(f, x_).value(), std::move(slopes));
}

PLFunction Localization::preimage(const Germ& g) const {
    if (g.n() != n()) throw TropError("germ has " + std::to_string(g.n()) + " slopes, the point has valence " + std::to_string(n()));
    if (g.is_neg_inf()) return PLFunction::neg_inf(c_);
    const Curve& c = *c_;
    const Rational& a = g.coeff();

    // Start of each direction on its edge, and the room before the edge ends.
    struct Bump {
        Rational center;
        int sign;
        Int slope;
    };
    std::vector<std::vector<Bump>> bumps(c.num_edges());
    std::optional<Rational> room;
    for (std::size_t j = 0; j < dirs_.size(); ++j) {
        const Direction& d = dirs_[j];
        Rational c0 = x_.is_vertex() ? (d.forward ? Rational(0) : c.length(d.edge)) : x_.offset;
        bumps[d.edge].push_back({c0, d.forward ? 1 : -1, g.slopes()[j]});
        std::optional<Rational> r;
        if (!d.forward) r = c0;
        else if (!c.is_infinite(d.edge)) r = c.length(d.edge) - c0;
        if (r && (!room || *r < *room)) room = r;
    }
    Rational delta = room ? Rational(*room / 4) : Rational(1);

    std::vector<EdgeProfile> ps;
    for (std::size_t e = 0; e < c.num_edges(); ++e) {
        const Extended& len = c.edge(e).length;
        if (bumps[e].empty()) {
            ps.push_back(EdgeProfile::affine(len, a, 0));
            continue;
        }
        std::set<Rational> ts{Rational(0)};
        if (len.finite()) ts.insert(len.value());
        for (const auto& b : bumps[e])
            for (int k = 0; k <= 2; ++k) ts.insert(b.center + b.sign * k * delta);
        auto value = [&](const Rational& t) {
            Rational v = a;
            for (const auto& b : bumps[e]) {
                Rational r = (t - b.center) * b.sign;
                if (r < 0 || r > 2 * delta) continue;
                v += b.slope * (r <= delta ? r : Rational(2 * delta - r));
            }
            return v;
        };
        EdgeProfile p;
        for (const auto& t : ts) {
            if (t < 0 || (len.finite() && t > len.value())) continue;
            p.t.push_back(t);
            p.v.push_back(value(t));
        }
        ps.push_back(std::move(p));
    }
    std::map<std::size_t, Rational> isolated;
    for (std::size_t v = 0; v < c.num_vertices(); ++v)
        if (c.incident(v).empty()) isolated[v] = a;
    return PLFunction(c_, std::move(ps), isolated);
}

SurjectivityReport localization_surjectivity(const CurvePtr& c, const PointRef& x, RandomSource& rng, int samples) {
    Localization loc(c, x);
    SurjectivityReport r;
    r.valence = loc.n();
    for (int i = 0; i < samples; ++i) {
        Germ g = rng.germ(loc.n());
        ++r.sampled;
        if (loc.apply(loc.preimage(g)) == g) ++r.matched;
    }
    return r;
}

LocalLattice weighted_local_image(const Morphism& m, const PointRef& x) {
    auto w = weight_check(m);
    if (!w.is_weight) throw TropError("not a weight: " + w.reason);
    const Curve& s = *m.source;
    const Curve& t = *m.target;
    t.check_point(x);
    if (t.is_infinity(x)) throw TropError("cannot localize at a point at infinity");
    std::optional<PointRef> y;
    if (x.is_vertex()) {
        for (std::size_t v = 0; v < s.num_vertices(); ++v)
            if (m.vertex_map[v] == x.index) y = PointRef::vertex(v);
    } else {
        for (std::size_t e = 0; e < s.num_edges(); ++e) {
            if (m.edge_map[e].index != x.index) continue;
            Rational off = reversed(m, e) ? Rational(t.length(x.index) - x.offset) : x.offset;
            y = s.edge_point(e, off / m.deg[e]);
        }
    }
    Localization loc(m.source, *y);
    LocalLattice out{*y, loc.order_ids(), {}};
    for (const auto& d : loc.order()) out.weights.push_back(m.deg[d.edge]);
    return out;
}

}  // namespace tropcurve
