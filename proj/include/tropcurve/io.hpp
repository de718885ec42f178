#pragma once

// JSON file formats. Rationals are written as "p/q" strings; readers also take JSON integers and
// reject floats. Shape errors (wrong types, missing keys) raise ParseError carrying the JSON
// pointer of the offending value; syntax errors carry a byte position.

#include <string>
#include <string_view>
#include <vector>

#include "tropcurve/complex.hpp"
#include "tropcurve/morphism.hpp"
#include "tropcurve/rat_fun.hpp"
#include "tropcurve/subgraph.hpp"
#include "tropcurve/trop_poly.hpp"

namespace tropcurve::io {

// Indented JSON with short scalar arrays kept on one line, plus a trailing newline.
std::string pretty(std::string_view json_text);

// "line L, column C" for a byte offset into text (1-based).
std::string describe_position(std::string_view text, std::size_t byte);

CurveDescription read_curve(std::string_view text);
std::string write_curve(const CurveDescription& d);

// Keyed by user edge id; the whole text "-inf" (a JSON string) is the zero function.
// Values of edgeless vertices go under the reserved key "#vertices".
PLFunction read_function(const CurvePtr& c, std::string_view text);
std::string write_function(const PLFunction& f);

// List of [point name, coefficient].
Divisor read_divisor(const CurvePtr& c, std::string_view text);
std::string write_divisor(const Divisor& d);

MorphismDescription read_morphism(std::string_view text);
std::string write_morphism(const MorphismDescription& m);

PolyComplex1D read_complex(std::string_view text);
std::string write_complex(const PolyComplex1D& k);

// {"vars": n, "terms": [{"exp": [..], "coeff": "p/q"}, ...]}; no terms is the -inf polynomial.
TropPoly read_poly(std::string_view text);
std::string write_poly(const TropPoly& f);

// {"points": [...], "edges": [...], "intervals": [{"edge", "a", "b"}]}
SubgraphSpec read_subgraph(std::string_view text);
std::string write_subgraph(const SubgraphSpec& s);

// {"vertices": {source vertex: target point name}, "edges": {source edge: {"edge", "start", "reversed"}}}
Embedding read_embedding(const CurvePtr& source, const CurvePtr& target, std::string_view text);
std::string write_embedding(const Embedding& e);

// Report helpers: integral rationals become JSON integers, others "p/q" strings.
std::string rational_report(const Rational& q);
std::string point_report(const RatVec& p);

}  // namespace tropcurve::io
