#include <algorithm>
#include <set>
#include <tuple>

#include "tropcurve/errors.hpp"
#include "tropcurve/rat_fun.hpp"

namespace tropcurve {

Int Divisor::degree() const {
    Int d = 0;
    for (const auto& [p, k] : coeff) d += k;
    return d;
}

Int Divisor::at(const PointRef& p) const {
    auto it = coeff.find(p);
    return it == coeff.end() ? 0 : it->second;
}

bool Divisor::effective() const {
    return std::all_of(coeff.begin(), coeff.end(), [](const auto& kv) { return kv.second >= 0; });
}

std::vector<std::pair<PointRef, Int>> Divisor::sorted() const {
    std::vector<std::pair<PointRef, Int>> out(coeff.begin(), coeff.end());
    // Finite vertices by id, then edge points by (edge id, offset); a point at infinity sorts as
    // the far end of its ray.
    auto key = [&](const PointRef& p) {
        std::string id;
        Rational off;
        bool far = false, on_edge = !p.is_vertex();
        if (p.is_vertex() && curve->is_infinity(p)) {
            id = curve->user_position(curve->incident(p.index).front(), Rational(0)).first;
            far = on_edge = true;
        } else if (p.is_vertex()) {
            id = curve->vertex(p.index).id;
        } else {
            auto [uid, t] = curve->user_position(p.index, p.offset);
            id = uid;
            off = t;
        }
        return std::make_tuple(curve->component_of(p), on_edge, id, far, off);
    };
    std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) { return key(a.first) < key(b.first); });
    return out;
}

bool operator==(const Divisor& a, const Divisor& b) {
    return (a.curve == b.curve || *a.curve == *b.curve) && a.coeff == b.coeff;
}

Divisor make_divisor(CurvePtr c, const std::vector<std::pair<PointRef, Int>>& terms) {
    Divisor d{std::move(c), {}};
    for (const auto& [p, k] : terms) {
        d.curve->check_point(p);
        if ((d.coeff[p] += k) == 0) d.coeff.erase(p);
    }
    return d;
}

Divisor operator+(const Divisor& a, const Divisor& b) {
    if (!(a.curve == b.curve || *a.curve == *b.curve)) throw TropError("divisors live on different curves");
    Divisor d = a;
    for (const auto& [p, k] : b.coeff)
        if ((d.coeff[p] += k) == 0) d.coeff.erase(p);
    return d;
}

Divisor operator-(const Divisor& a) {
    Divisor d = a;
    for (auto& [p, k] : d.coeff) k = -k;
    return d;
}

Divisor div_of(const PLFunction& f) {
    if (f.is_neg_inf()) throw TropError("the -inf function has no divisor");
    const Curve& c = *f.curve();
    std::vector<std::pair<PointRef, Int>> terms;
    for (std::size_t v = 0; v < c.num_vertices(); ++v) {
        PointRef p = PointRef::vertex(v);
        Int sum = 0;
        for (const auto& d : c.directions(p)) sum += outgoing_slope(f, p, d);
        if (sum != 0) terms.push_back({p, sum});
    }
    for (std::size_t e = 0; e < c.num_edges(); ++e) {
        const auto& prof = f.profile(e);
        for (std::size_t i = 1; i < prof.t.size(); ++i) {
            if (!c.is_infinite(e) && i + 1 == prof.t.size()) break;
            Int k = prof.slope_after(prof.t[i]) - prof.slope_before(prof.t[i]);
            if (k != 0) terms.push_back({c.edge_point(e, prof.t[i]), k});
        }
    }
    return make_divisor(f.curve(), terms);
}

bool is_harmonic_at(const PLFunction& f, const PointRef& p) {
    const Curve& c = *f.curve();
    Int sum = 0;
    for (const auto& d : c.directions(p)) sum += outgoing_slope(f, p, d);
    return sum == 0;
}

bool rd_member(const Divisor& d, const PLFunction& f) {
    if (!(d.curve == f.curve() || *d.curve == *f.curve())) throw TropError("divisor and function live on different curves");
    if (f.is_neg_inf()) return true;
    return (d + div_of(f)).effective();
}

std::optional<Int> module_degree(const std::vector<PLFunction>& gens) {
    if (gens.empty()) throw TropError("module degree needs at least one generator");
    std::vector<Divisor> divs;
    for (const auto& g : gens) {
        if (!(g.curve() == gens.front().curve() || *g.curve() == *gens.front().curve()))
            throw TropError("generators live on different curves");
        if (!g.is_neg_inf()) divs.push_back(div_of(g));
    }
    if (divs.empty()) return std::nullopt;
    std::set<PointRef> poles;
    for (const auto& d : divs)
        for (const auto& [p, k] : d.coeff)
            if (k < 0) poles.insert(p);
    Int deg = 0;
    for (const auto& p : poles) {
        Int lo = 0;
        for (const auto& d : divs) lo = std::min(lo, d.at(p));
        deg -= lo;
    }
    return deg;
}

}  // namespace tropcurve
