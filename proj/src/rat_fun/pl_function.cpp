#include "tropcurve/pl_function.hpp"

#include <algorithm>
#include <set>

#include "profile_ops.hpp"
#include "tropcurve/errors.hpp"

namespace tropcurve {

namespace {

bool same_curve(const CurvePtr& a, const CurvePtr& b) { return a == b || *a == *b; }

void require_same_curve(const PLFunction& f, const PLFunction& g) {
    if (!same_curve(f.curve(), g.curve())) throw TropError("functions live on different curves");
}

std::map<std::size_t, Rational> isolated_values(const PLFunction& f) {
    std::map<std::size_t, Rational> out;
    const Curve& c = *f.curve();
    for (std::size_t v = 0; v < c.num_vertices(); ++v)
        if (c.incident(v).empty()) out[v] = f.vertex_value(v);
    return out;
}

// Applies an edge operation and a vertex-value operation to two finite functions.
template <class EdgeOp, class ValueOp>
PLFunction combine(const PLFunction& f, const PLFunction& g, EdgeOp edge_op, ValueOp value_op) {
    const Curve& c = *f.curve();
    std::vector<EdgeProfile> ps;
    for (std::size_t e = 0; e < c.num_edges(); ++e) ps.push_back(edge_op(f.profile(e), g.profile(e), c.is_infinite(e)));
    auto iso = isolated_values(f);
    for (auto& [v, x] : iso) x = value_op(x, g.vertex_value(v));
    return PLFunction(f.curve(), std::move(ps), iso);
}

template <class EdgeOp, class ValueOp>
PLFunction transform(const PLFunction& f, EdgeOp edge_op, ValueOp value_op) {
    std::vector<EdgeProfile> ps;
    for (const auto& p : f.profiles()) ps.push_back(edge_op(p));
    auto iso = isolated_values(f);
    for (auto& [v, x] : iso) x = value_op(x);
    return PLFunction(f.curve(), std::move(ps), iso);
}

}  // namespace

PLFunction PLFunction::neg_inf(CurvePtr c) {
    PLFunction f;
    f.curve_ = std::move(c);
    f.neg_inf_ = true;
    return f;
}

PLFunction PLFunction::constant(CurvePtr c, const Rational& value) {
    std::vector<EdgeProfile> ps;
    std::map<std::size_t, Rational> iso;
    for (std::size_t e = 0; e < c->num_edges(); ++e) ps.push_back(EdgeProfile::affine(c->edge(e).length, value, 0));
    for (std::size_t v = 0; v < c->num_vertices(); ++v)
        if (c->incident(v).empty()) iso[v] = value;
    return PLFunction(std::move(c), std::move(ps), iso);
}

PLFunction::PLFunction(CurvePtr c, std::vector<EdgeProfile> profiles, const std::map<std::size_t, Rational>& isolated)
    : curve_(std::move(c)), profiles_(std::move(profiles)) {
    const Curve& cv = *curve_;
    if (profiles_.size() != cv.num_edges()) throw TropError("function needs one profile per edge");
    std::vector<std::optional<Rational>> vals(cv.num_vertices());
    auto pin = [&](std::size_t v, const Rational& x) {
        if (vals[v] && *vals[v] != x)
            throw TropError("function is discontinuous at vertex '" + cv.vertex(v).id + "' (" + to_string(*vals[v]) +
                            " vs " + to_string(x) + ")");
        vals[v] = x;
    };
    for (std::size_t e = 0; e < cv.num_edges(); ++e) {
        auto& p = profiles_[e];
        profile::validate(p, cv.edge(e).length, cv.edge(e).id);
        profile::canonicalize(p, cv.is_infinite(e));
        pin(cv.edge(e).u, p.v.front());
        if (!cv.is_infinite(e)) pin(cv.edge(e).v, p.v.back());
    }
    for (const auto& [v, x] : isolated) {
        if (v >= cv.num_vertices() || !cv.incident(v).empty()) throw TropError("isolated value for a non-isolated vertex");
        pin(v, x);
    }
    vertex_values_.resize(cv.num_vertices());
    for (std::size_t v = 0; v < cv.num_vertices(); ++v)
        if (vals[v]) vertex_values_[v] = *vals[v];
}

const Rational& PLFunction::vertex_value(std::size_t v) const {
    if (neg_inf_) throw TropError("the -inf function has no finite values");
    if (curve_->vertex(v).at_infinity) throw TropError("vertex at infinity has no finite value");
    return vertex_values_.at(v);
}

Int PLFunction::slope_at_infinity(std::size_t e) const {
    if (neg_inf_) throw TropError("the -inf function has no slopes");
    if (!curve_->is_infinite(e)) throw TropError("edge '" + curve_->edge(e).id + "' is not a ray");
    return profiles_.at(e).tail;
}

bool operator==(const PLFunction& a, const PLFunction& b) {
    if (!same_curve(a.curve_, b.curve_) || a.neg_inf_ != b.neg_inf_) return false;
    return a.neg_inf_ || (a.profiles_ == b.profiles_ && a.vertex_values_ == b.vertex_values_);
}

PLFunction oplus(const PLFunction& f, const PLFunction& g) {
    require_same_curve(f, g);
    if (f.is_neg_inf()) return g;
    if (g.is_neg_inf()) return f;
    return combine(f, g, profile::max, [](const Rational& x, const Rational& y) { return x < y ? y : x; });
}

PLFunction omin(const PLFunction& f, const PLFunction& g) {
    require_same_curve(f, g);
    if (f.is_neg_inf() || g.is_neg_inf()) return PLFunction::neg_inf(f.curve());
    return combine(f, g, profile::min, [](const Rational& x, const Rational& y) { return x < y ? x : y; });
}

PLFunction odot(const PLFunction& f, const PLFunction& g) {
    require_same_curve(f, g);
    if (f.is_neg_inf() || g.is_neg_inf()) return PLFunction::neg_inf(f.curve());
    return combine(f, g, profile::add, [](const Rational& x, const Rational& y) { return Rational(x + y); });
}

PLFunction inverse(const PLFunction& f) {
    if (f.is_neg_inf()) throw TropError("zero has no multiplicative inverse");
    return transform(f, profile::negate, [](const Rational& x) { return Rational(-x); });
}

PLFunction scalar(const Rational& a, const PLFunction& f) {
    if (f.is_neg_inf()) return f;
    return transform(f, [&](const EdgeProfile& p) { return profile::shift(p, a); },
                     [&](const Rational& x) { return Rational(x + a); });
}

PLFunction power(const PLFunction& f, Int k) {
    if (f.is_neg_inf()) {
        if (k < 0) throw TropError("zero has no multiplicative inverse");
        return k == 0 ? PLFunction::constant(f.curve(), Rational(0)) : f;
    }
    return transform(f, [&](const EdgeProfile& p) { return profile::scale(p, k); },
                     [&](const Rational& x) { return Rational(x * make_rational(k)); });
}

PLOps pl_ops(const PLFunction& f, const PLFunction& g, const Rational& t) {
    std::optional<PLFunction> inv;
    if (!f.is_neg_inf()) inv = inverse(f);
    return PLOps{oplus(f, g), odot(f, g), inv, scalar(t, f)};
}

Extended eval(const PLFunction& f, const PointRef& p) {
    const Curve& c = *f.curve();
    c.check_point(p);
    if (f.is_neg_inf()) return Extended::neg_inf();
    if (!p.is_vertex()) return f.profile(p.index).value_at(p.offset);
    if (!c.vertex(p.index).at_infinity) return f.vertex_value(p.index);
    const auto& prof = f.profile(c.incident(p.index).front());
    if (prof.tail > 0) return Extended::pos_inf();
    if (prof.tail < 0) return Extended::neg_inf();
    return prof.v.back();
}

Int outgoing_slope(const PLFunction& f, const PointRef& p, const Direction& d) {
    if (f.is_neg_inf()) throw TropError("the -inf function has no slopes");
    const Curve& c = *f.curve();
    auto dirs = c.directions(p);
    if (std::find(dirs.begin(), dirs.end(), d) == dirs.end()) throw TropError("invalid direction at this point");
    const EdgeProfile& prof = f.profile(d.edge);
    if (p.is_vertex()) {
        if (d.forward) return prof.slope_after(Rational(0));
        if (c.vertex(p.index).at_infinity) return -prof.tail;
        return -prof.slope_before(c.length(d.edge));
    }
    return d.forward ? prof.slope_after(p.offset) : -prof.slope_before(p.offset);
}

std::vector<Rational> breakpoints(const PLFunction& f, std::size_t e) {
    if (f.is_neg_inf()) return {};
    return f.profile(e).t;
}

EdgeProfile sample_edge(const PLFunction& f, std::size_t e, const Rational& start, Int k, const Extended& length) {
    if (f.is_neg_inf()) throw TropError("cannot sample the -inf function");
    const EdgeProfile& src = f.profile(e);
    if (k == 0 || (length.finite() && length.value() == 0)) return EdgeProfile::affine(length, src.value_at(start), 0);
    const Rational kq = make_rational(k);
    std::set<Rational> ts{Rational(0)};
    if (length.finite()) ts.insert(length.value());
    else if (k < 0) throw TropError("an infinite piece must run toward infinity");
    for (const auto& s : src.t) {
        Rational t = (s - start) / kq;
        if (t > 0 && (!length.finite() || t < length.value())) ts.insert(t);
    }
    EdgeProfile out;
    for (const auto& t : ts) {
        out.t.push_back(t);
        out.v.push_back(src.value_at(start + kq * t));
    }
    out.tail = length.finite() ? 0 : src.tail * k;
    profile::canonicalize(out, !length.finite());
    return out;
}

PLFunction make_function(const CurvePtr& c, const std::map<std::string, UserProfile>& edges,
                         const std::map<std::string, Rational>& isolated_vertices) {
    std::vector<std::optional<EdgeProfile>> ps(c->num_edges());
    for (const auto& [id, up] : edges) {
        auto pieces = c->pieces_of(id);
        EdgeProfile whole;
        for (const auto& [t, v] : up.breakpoints) {
            whole.t.push_back(t);
            whole.v.push_back(v);
        }
        whole.tail = up.slope_at_infinity;
        if (pieces.size() == 1) {
            ps[pieces[0].first] = whole;
            continue;
        }
        Rational total = c->length(pieces[0].first) + c->length(pieces[1].first);
        profile::validate(whole, Extended(total), id);
        for (auto [e, shift] : pieces) ps[e] = profile::slice(whole, shift, Extended(Rational(shift + c->length(e))));
    }
    std::vector<EdgeProfile> out;
    for (std::size_t e = 0; e < c->num_edges(); ++e) {
        if (!ps[e]) throw TropError("no profile given for edge '" + c->user_position(e, Rational(0)).first + "'");
        out.push_back(*ps[e]);
    }
    std::map<std::size_t, Rational> iso;
    for (const auto& [id, x] : isolated_vertices) iso[c->vertex_index(id)] = x;
    return PLFunction(c, std::move(out), iso);
}

std::map<std::string, UserProfile> user_profiles(const PLFunction& f) {
    if (f.is_neg_inf()) throw TropError("the -inf function has no profiles");
    const Curve& c = *f.curve();
    std::map<std::string, std::vector<std::pair<Rational, std::size_t>>> groups;
    for (std::size_t e = 0; e < c.num_edges(); ++e) {
        auto [uid, shift] = c.user_position(e, Rational(0));
        groups[uid].push_back({shift, e});
    }
    std::map<std::string, UserProfile> out;
    for (auto& [uid, parts] : groups) {
        std::sort(parts.begin(), parts.end());
        EdgeProfile whole;
        for (const auto& [shift, e] : parts) {
            const auto& p = f.profile(e);
            for (std::size_t i = whole.t.empty() ? 0 : 1; i < p.t.size(); ++i) {
                whole.t.push_back(p.t[i] + shift);
                whole.v.push_back(p.v[i]);
            }
            whole.tail = p.tail;
        }
        profile::canonicalize(whole, c.is_infinite(parts.back().second));
        UserProfile up;
        for (std::size_t i = 0; i < whole.t.size(); ++i) up.breakpoints.push_back({whole.t[i], whole.v[i]});
        up.slope_at_infinity = whole.tail;
        out[uid] = std::move(up);
    }
    return out;
}

}  // namespace tropcurve
