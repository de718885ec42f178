#include <sstream>

#include "tropcurve/errors.hpp"
#include "tropcurve/realization.hpp"

namespace tropcurve {

namespace {

constexpr int kDigits = 6;

std::string num(const Rational& q) { return to_decimal(q, kDigits); }

}  // namespace

std::string complex_svg(const PolyComplex1D& k0) {
    validate_structure(k0);
    if (k0.dim != 2) throw TropError("SVG output needs a complex in the plane");
    PolyComplex1D k = canonical_complex(k0);
    if (k.vertices.empty()) throw TropError("empty complex");

    Rational xmin = k.vertices[0][0], xmax = xmin, ymin = k.vertices[0][1], ymax = ymin;
    for (const auto& v : k.vertices) {
        xmin = std::min(xmin, v[0]);
        xmax = std::max(xmax, v[0]);
        ymin = std::min(ymin, v[1]);
        ymax = std::max(ymax, v[1]);
    }
    Rational reach = std::max({Rational(xmax - xmin), Rational(ymax - ymin), Rational(1)});
    std::vector<std::pair<RatVec, RatVec>> strokes;  // from, to
    std::vector<Int> weights;
    for (const auto& s : k.segments) {
        strokes.push_back({k.vertices[s.a], k.vertices[s.b]});
        weights.push_back(s.weight);
    }
    for (const auto& r : k.rays) {
        Int m = std::max(r.dir[0] < 0 ? -r.dir[0] : r.dir[0], r.dir[1] < 0 ? -r.dir[1] : r.dir[1]);
        strokes.push_back({k.vertices[r.from], add_scaled(k.vertices[r.from], r.dir, reach / m)});
        weights.push_back(r.weight);
    }
    for (const auto& [a, b] : strokes) {
        xmin = std::min(xmin, b[0]);
        xmax = std::max(xmax, b[0]);
        ymin = std::min(ymin, b[1]);
        ymax = std::max(ymax, b[1]);
    }
    Rational pad = reach / 10;
    xmin -= pad;
    ymin -= pad;
    xmax += pad;
    ymax += pad;
    // SVG y grows downward
    auto X = [&](const Rational& x) { return num(x); };
    auto Y = [&](const Rational& y) { return num(ymax + ymin - y); };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(xmin) << " " << num(ymin) << " "
        << num(xmax - xmin) << " " << num(ymax - ymin) << "\">\n";
    out << "<g stroke=\"black\" stroke-width=\"" << num(reach / 100) << "\" fill=\"none\">\n";
    for (std::size_t i = 0; i < strokes.size(); ++i) {
        const auto& [a, b] = strokes[i];
        out << "<line x1=\"" << X(a[0]) << "\" y1=\"" << Y(a[1]) << "\" x2=\"" << X(b[0]) << "\" y2=\"" << Y(b[1])
            << "\" data-weight=\"" << weights[i] << "\"/>\n";
    }
    out << "</g>\n<g font-size=\"" << num(reach / 20) << "\" fill=\"blue\">\n";
    for (std::size_t i = 0; i < strokes.size(); ++i) {
        const auto& [a, b] = strokes[i];
        out << "<text x=\"" << X((a[0] + b[0]) / 2) << "\" y=\"" << Y((a[1] + b[1]) / 2) << "\">" << weights[i]
            << "</text>\n";
    }
    out << "</g>\n</svg>\n";
    return out.str();
}

std::string complex_csv(const PolyComplex1D& k0) {
    validate_structure(k0);
    PolyComplex1D k = canonical_complex(k0);
    auto vec = [](const auto& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += ' ';
            if constexpr (std::is_same_v<std::decay_t<decltype(v[i])>, Rational>) s += to_string(v[i]);
            else s += std::to_string(v[i]);
        }
        return s;
    };
    std::ostringstream out;
    out << "kind,index,from,to,direction,weight\n";
    for (std::size_t i = 0; i < k.vertices.size(); ++i) out << "vertex," << i << "," << vec(k.vertices[i]) << ",,,\n";
    for (std::size_t i = 0; i < k.segments.size(); ++i)
        out << "segment," << i << "," << k.segments[i].a << "," << k.segments[i].b << ",," << k.segments[i].weight << "\n";
    for (std::size_t i = 0; i < k.rays.size(); ++i)
        out << "ray," << i << "," << k.rays[i].from << ",," << vec(k.rays[i].dir) << "," << k.rays[i].weight << "\n";
    return out.str();
}

}  // namespace tropcurve
