#include "tropcurve/germ.hpp"

#include <algorithm>
#include <sstream>

#include "tropcurve/errors.hpp"

namespace tropcurve {

Germ Germ::zero(std::size_t n) {
    Germ g;
    g.n_ = n;
    return g;
}

Germ Germ::one(std::size_t n) { return Germ(Rational(0), IntVec(n, 0)); }

Germ::Germ(Rational coeff, IntVec slopes)
    : n_(slopes.size()), neg_inf_(false), coeff_(std::move(coeff)), slopes_(std::move(slopes)) {}

const Rational& Germ::coeff() const {
    if (neg_inf_) throw TropError("coefficient of -inf germ requested");
    return coeff_;
}

const IntVec& Germ::slopes() const {
    if (neg_inf_) throw TropError("slopes of -inf germ requested");
    return slopes_;
}

TropValue Germ::as_trop_value() const {
    if (n_ != 0) throw TropError("germ with slopes is not an element of T");
    return neg_inf_ ? TropValue::neg_inf() : TropValue(coeff_);
}

std::string Germ::str() const {
    if (neg_inf_) return "-inf";
    std::ostringstream os;
    os << '(' << to_string(coeff_) << ",(";
    for (std::size_t i = 0; i < slopes_.size(); ++i) os << (i ? "," : "") << slopes_[i];
    os << "))";
    return os.str();
}

bool operator==(const Germ& a, const Germ& b) {
    if (a.n_ != b.n_ || a.neg_inf_ != b.neg_inf_) return false;
    return a.neg_inf_ || (a.coeff_ == b.coeff_ && a.slopes_ == b.slopes_);
}

namespace {

void same_n(const Germ& g, const Germ& h) {
    if (g.n() != h.n())
        throw TropError("germs over different R_n (" + std::to_string(g.n()) + " vs " +
                        std::to_string(h.n()) + ")");
}

}  // namespace

Germ boxplus(const Germ& g, const Germ& h) {
    same_n(g, h);
    if (g.is_neg_inf()) return h;
    if (h.is_neg_inf()) return g;
    if (g.coeff() > h.coeff()) return g;
    if (h.coeff() > g.coeff()) return h;
    IntVec s(g.n());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = std::max(g.slopes()[i], h.slopes()[i]);
    return Germ(g.coeff(), std::move(s));
}

Germ boxdot(const Germ& g, const Germ& h) {
    same_n(g, h);
    if (g.is_neg_inf() || h.is_neg_inf()) return Germ::zero(g.n());
    IntVec s(g.n());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = g.slopes()[i] + h.slopes()[i];
    return Germ(g.coeff() + h.coeff(), std::move(s));
}

Germ inverse(const Germ& g) {
    if (g.is_neg_inf()) throw TropError("zero has no multiplicative inverse");
    IntVec s(g.slopes());
    for (Int& x : s) x = -x;
    return Germ(-g.coeff(), std::move(s));
}

Germ power(const Germ& g, Int k) {
    if (g.is_neg_inf()) {
        if (k < 0) throw TropError("zero has no multiplicative inverse");
        return k == 0 ? Germ::one(g.n()) : g;
    }
    IntVec s(g.slopes());
    for (Int& x : s) x *= k;
    return Germ(g.coeff() * make_rational(k), std::move(s));
}

GermOpsResult germ_ops(const Germ& g, const Germ& h) {
    return GermOpsResult{boxplus(g, h), boxdot(g, h), inverse(g)};
}

Germ germ_forget(const Germ& g, std::size_t k) {
    if (g.n() == 0 || k < 1 || k > g.n())
        throw TropError("forget index " + std::to_string(k) + " out of range for R_" + std::to_string(g.n()));
    if (g.is_neg_inf()) return Germ::zero(g.n() - 1);
    IntVec s(g.slopes());
    s.erase(s.begin() + static_cast<std::ptrdiff_t>(k - 1));
    return Germ(g.coeff(), std::move(s));
}

Int germ_omega(const Germ& g) {
    if (g.is_neg_inf()) throw TropError("omega undefined at zero");
    Int sum = 0;
    for (Int x : g.slopes()) sum += x;
    return sum;
}

namespace {

Germ unit_vector(std::size_t n, std::size_t i) {
    IntVec s(n, 0);
    s[i] = 1;
    return Germ(Rational(0), std::move(s));
}

struct Checker {
    GeneratorReport& report;
    void expect(const std::string& label, const Germ& got, const Germ& want) {
        bool ok = got == want;
        report.identities_checked.push_back(label + " = " + got.str() + (ok ? "" : " (expected " + want.str() + ")"));
        report.pass = report.pass && ok;
    }
};

}  // namespace

// The generating identities for R_n from one or two explicit elements. For k >= 3 the
// standard basis vector e_k is recovered from the running quotients
//   u = v1 - e1 - e3 - ... - e_{k-1},  t = v2 - e2 - sum_{3 <= j < k} (j-2) e_j
// as e_k = (u^{k-1} ⊡ t^{-1}) ⊞ 0, whose slopes are k+1-j on component j >= k.
GeneratorReport verify_rn_generators(std::size_t n, std::size_t bound) {
    if (n < 1 || n > bound)
        throw TropError("n = " + std::to_string(n) + " outside 1.." + std::to_string(bound));
    GeneratorReport report;
    Checker check{report};
    const Germ one = Germ::one(n);

    if (n == 1) {
        Germ gen(Rational(0), IntVec{1});
        check.expect("generator (0,(1)) ⊡ (0,(1))^(-1)", boxdot(gen, inverse(gen)), one);
        check.expect("generator (0,(1))", gen, unit_vector(1, 0));
        return report;
    }
    if (n == 2) {
        Germ w(Rational(0), IntVec{1, -1});
        check.expect("(0,(1,-1)) ⊞ (0,(0,0))", boxplus(w, one), unit_vector(2, 0));
        check.expect("(0,(1,-1))^(-1) ⊞ (0,(0,0))", boxplus(inverse(w), one), unit_vector(2, 1));
        return report;
    }

    IntVec s1(n, 1), s2(n);
    s1[1] = 0;
    s2[0] = 0;
    s2[1] = 1;
    for (std::size_t j = 2; j < n; ++j) s2[j] = static_cast<Int>(j) - 1;  // component j+1 gets j-1
    const Germ v1(Rational(0), s1), v2(Rational(0), s2);

    std::vector<Germ> e;
    e.push_back(boxplus(boxdot(v1, inverse(v2)), one));
    check.expect("e1' = v1 ⊡ v2^(-1) ⊞ 0", e[0], unit_vector(n, 0));
    Germ a = boxdot(v1, inverse(e[0]));
    e.push_back(boxplus(boxdot(v2, power(a, -static_cast<Int>(n - 2))), one));
    check.expect("e2' = v2 ⊡ (v1 ⊡ e1'^(-1))^(-(n-2)) ⊞ 0", e[1], unit_vector(n, 1));
    Germ b = boxdot(v2, inverse(e[1]));
    e.push_back(boxplus(boxdot(power(a, 2), inverse(b)), one));
    check.expect("e3' = (v1 ⊡ e1'^(-1))^2 ⊡ (v2 ⊡ e2'^(-1))^(-1) ⊞ 0", e[2], unit_vector(n, 2));

    for (std::size_t k = 4; k <= n; ++k) {
        Germ u = boxdot(v1, inverse(e[0]));
        Germ t = boxdot(v2, inverse(e[1]));
        for (std::size_t j = 3; j < k; ++j) {
            u = boxdot(u, inverse(e[j - 1]));
            t = boxdot(t, power(e[j - 1], -static_cast<Int>(j - 2)));
        }
        e.push_back(boxplus(boxdot(power(u, static_cast<Int>(k - 1)), inverse(t)), one));
        check.expect("e" + std::to_string(k) + "' by closure", e.back(), unit_vector(n, k - 1));
    }

    // Every standard generator recovered: v1, v2 and their inverses generate R_n.
    Germ rebuilt = one;
    for (std::size_t j = 0; j < n; ++j) rebuilt = boxdot(rebuilt, power(e[j], s1[j]));
    check.expect("v1 rebuilt from e1'..en'", rebuilt, v1);
    return report;
}

}  // namespace tropcurve
