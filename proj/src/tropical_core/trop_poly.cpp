#include "tropcurve/trop_poly.hpp"

#include <algorithm>
#include <sstream>

#include "tropcurve/errors.hpp"

namespace tropcurve {

TropPoly::TropPoly(std::size_t vars) : vars_(vars) {}

TropPoly::TropPoly(std::size_t vars, Terms terms) : vars_(vars) {
    for (auto& [e, c] : terms) add_term(e, c);
}

TropPoly TropPoly::monomial(const Rational& coeff, IntVec exponent) {
    TropPoly p(exponent.size());
    p.add_term(std::move(exponent), coeff);
    return p;
}

void TropPoly::add_term(IntVec exponent, const Rational& coeff) {
    if (exponent.size() != vars_)
        throw TropError("exponent has " + std::to_string(exponent.size()) + " entries, expected " +
                        std::to_string(vars_));
    auto [it, inserted] = terms_.emplace(std::move(exponent), coeff);
    if (!inserted && it->second < coeff) it->second = coeff;
}

std::string TropPoly::str() const {
    if (terms_.empty()) return "-inf\n";
    std::ostringstream os;
    for (const auto& [e, c] : terms_) {
        os << to_string(c) << " :";
        for (Int x : e) os << ' ' << x;
        os << '\n';
    }
    return os.str();
}

TropPoly TropPoly::parse(std::string_view text, std::size_t vars_hint) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::optional<TropPoly> poly;
    bool saw_neg_inf = false;
    std::size_t offset = 0;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t line_start = offset;
        offset += line.size() + 1;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::string body = line.substr(first);
        while (!body.empty() && (body.back() == ' ' || body.back() == '\t' || body.back() == '\r')) body.pop_back();
        auto fail = [&](const std::string& msg) -> ParseError {
            return ParseError("line " + std::to_string(lineno) + ": " + msg, line_start + first);
        };
        if (body == "-inf") {
            saw_neg_inf = true;
            continue;
        }
        auto colon = body.find(':');
        if (colon == std::string::npos) throw fail("expected 'coeff : e1 ... en'");
        std::string coeff_text = body.substr(0, colon);
        coeff_text.erase(std::remove_if(coeff_text.begin(), coeff_text.end(), ::isspace), coeff_text.end());
        Rational coeff;
        try {
            coeff = parse_rational(coeff_text);
        } catch (const ParseError& e) {
            throw fail(e.what());
        }
        std::istringstream exps(body.substr(colon + 1));
        IntVec e;
        std::string tok;
        while (exps >> tok) {
            try {
                e.push_back(to_int(parse_rational(tok)));
            } catch (const TropError&) {
                throw fail("bad exponent '" + tok + "'");
            }
        }
        if (e.empty()) throw fail("term without exponents");
        if (!poly) poly.emplace(e.size());
        if (e.size() != poly->vars()) throw fail("inconsistent number of variables");
        poly->add_term(std::move(e), coeff);
    }
    if (poly) {
        if (saw_neg_inf) throw ParseError("'-inf' mixed with terms");
        return *poly;
    }
    if (!saw_neg_inf) throw ParseError("empty polynomial text");
    return TropPoly(vars_hint == 0 ? 1 : vars_hint);
}

bool operator==(const TropPoly& a, const TropPoly& b) {
    if (a.terms_.empty() && b.terms_.empty()) return true;
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
}

namespace {

void same_vars(const TropPoly& f, const TropPoly& g) {
    if (f.vars() != g.vars()) throw TropError("polynomials in different numbers of variables");
}

}  // namespace

TropPoly oplus(const TropPoly& f, const TropPoly& g) {
    if (f.is_neg_inf()) return g;
    if (g.is_neg_inf()) return f;
    same_vars(f, g);
    TropPoly r = f;
    for (const auto& [e, c] : g.terms()) r.add_term(e, c);
    return r;
}

TropPoly odot(const TropPoly& f, const TropPoly& g) {
    if (f.is_neg_inf()) return f;
    if (g.is_neg_inf()) return g;
    same_vars(f, g);
    TropPoly r(f.vars());
    for (const auto& [e1, c1] : f.terms())
        for (const auto& [e2, c2] : g.terms()) {
            IntVec e(e1.size());
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = e1[i] + e2[i];
            r.add_term(std::move(e), c1 + c2);
        }
    return r;
}

PolyEval poly_eval(const TropPoly& f, const RatVec& x) {
    if (x.size() != f.vars())
        throw TropError("point has dimension " + std::to_string(x.size()) + ", polynomial has " +
                        std::to_string(f.vars()) + " variables");
    PolyEval out;
    for (const auto& [e, c] : f.terms()) {
        Rational v = c;
        for (std::size_t i = 0; i < e.size(); ++i) v += make_rational(e[i]) * x[i];
        TropValue tv(v);
        if (out.value < tv) {
            out.value = tv;
            out.argmax_terms.clear();
        }
        if (out.value == tv) out.argmax_terms.push_back(e);
    }
    return out;
}

std::optional<Int> poly_degree(const TropPoly& f) {
    std::optional<Int> deg;
    for (const auto& [e, c] : f.terms()) {
        Int d = 0;
        for (Int x : e) {
            if (x < 0) throw TropError("not a tropical polynomial");
            d += x;
        }
        deg = deg ? std::max(*deg, d) : d;
    }
    return deg;
}

Germ poly_to_germ(const TropPoly& f) {
    Germ g = Germ::zero(f.vars());
    for (const auto& [e, c] : f.terms()) g = boxplus(g, Germ(c, e));
    return g;
}

}  // namespace tropcurve
