#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli.hpp"
#include "tropcurve/errors.hpp"
#include "tropcurve/germ.hpp"
#include "tropcurve/hypersurface.hpp"
#include "tropcurve/io.hpp"
#include "tropcurve/realization.hpp"
#include "tropcurve/suites.hpp"
#include "tropcurve/trop_value.hpp"

namespace py = pybind11;
using namespace tropcurve;

namespace {

// Rationals cross the boundary as fractions.Fraction; ints, Fractions and "p/q" strings are
// accepted on the way in, floats are refused so that nothing inexact sneaks into the library.
Rational to_rational(const py::handle& x) {
    if (py::isinstance<py::float_>(x)) throw py::type_error("floats are not accepted; use int, Fraction or a 'p/q' string");
    return parse_rational(py::str(x).cast<std::string>());
}

py::object to_fraction(const Rational& q) {
    static py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(to_string(q));
}

py::object to_py(const Extended& x) {
    if (x.finite()) return to_fraction(x.value());
    return py::float_(x.is_pos_inf() ? HUGE_VAL : -HUGE_VAL);
}

py::object to_py(const TropValue& a) { return a.is_neg_inf() ? py::none().cast<py::object>() : to_fraction(a.value()); }

TropValue to_trop(const py::handle& x) { return x.is_none() ? TropValue::neg_inf() : TropValue(to_rational(x)); }

// Germs are None or a (coefficient, slopes) pair.
Germ to_germ(const py::handle& x, std::size_t n) {
    if (x.is_none()) return Germ::zero(n);
    auto t = x.cast<py::tuple>();
    return Germ(to_rational(t[0]), t[1].cast<IntVec>());
}

py::object to_py(const Germ& g) {
    if (g.is_neg_inf()) return py::none();
    return py::make_tuple(to_fraction(g.coeff()), py::cast(g.slopes()));
}

std::size_t germ_size(const py::handle& g, const py::handle& h) {
    for (const auto& x : {g, h})
        if (!x.is_none()) return py::len(x.cast<py::tuple>()[1]);
    return 0;
}

py::tuple point_tuple(const RatVec& p) {
    py::list out;
    for (const auto& x : p) out.append(to_fraction(x));
    return py::tuple(out);
}

struct PyCurve {
    CurvePtr c;
};
struct PyFunction {
    PLFunction f;
};
struct PyComplex {
    PolyComplex1D k;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact tropical curves, rational functions and plane tropical geometry.";

    // Translators run newest first, so the subclass is registered last.
    auto& trop_error = py::register_exception<TropError>(m, "TropError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", trop_error.ptr());

    m.def("trop_add", [](py::object a, py::object b) { return to_py(oplus(to_trop(a), to_trop(b))); },
          "max(a, b); None stands for -inf.");
    m.def("trop_mul", [](py::object a, py::object b) { return to_py(odot(to_trop(a), to_trop(b))); },
          "a + b with -inf absorbing.");
    m.def("germ_add", [](py::object g, py::object h) {
        std::size_t n = germ_size(g, h);
        return to_py(boxplus(to_germ(g, n), to_germ(h, n)));
    });
    m.def("germ_mul", [](py::object g, py::object h) {
        std::size_t n = germ_size(g, h);
        return to_py(boxdot(to_germ(g, n), to_germ(h, n)));
    });
    m.def("verify_rn_generators", [](std::size_t n) {
        auto r = verify_rn_generators(n);
        return py::make_tuple(r.pass, r.identities_checked);
    });

    py::class_<PyCurve>(m, "Curve")
        .def_static("from_json", [](const std::string& text) { return PyCurve{build_curve(io::read_curve(text))}; })
        .def("to_json", [](const PyCurve& c) { return io::write_curve(describe(*c.c)); })
        .def_property_readonly("num_components", [](const PyCurve& c) { return c.c->num_components(); })
        .def("distance", [](const PyCurve& c, const std::string& p, const std::string& q) {
            return to_py(distance(*c.c, c.c->parse_point(p), c.c->parse_point(q)).value);
        })
        .def("__repr__", [](const PyCurve& c) {
            return "<Curve with " + std::to_string(c.c->num_vertices()) + " vertices and " +
                   std::to_string(c.c->num_edges()) + " edges>";
        });

    py::class_<PyFunction>(m, "Function")
        .def_static("from_json", [](const PyCurve& c, const std::string& text) { return PyFunction{io::read_function(c.c, text)}; })
        .def_static("constant", [](const PyCurve& c, py::object v) { return PyFunction{PLFunction::constant(c.c, to_rational(v))}; })
        .def("to_json", [](const PyFunction& f) { return io::write_function(f.f); })
        .def("oplus", [](const PyFunction& f, const PyFunction& g) { return PyFunction{oplus(f.f, g.f)}; })
        .def("odot", [](const PyFunction& f, const PyFunction& g) { return PyFunction{odot(f.f, g.f)}; })
        .def("inverse", [](const PyFunction& f) { return PyFunction{inverse(f.f)}; })
        .def("__call__", [](const PyFunction& f, const std::string& point) {
            return to_py(eval(f.f, f.f.curve()->parse_point(point)));
        })
        .def("div", [](const PyFunction& f) {
            std::vector<std::pair<std::string, Int>> out;
            for (const auto& [p, k] : div_of(f.f).sorted()) out.emplace_back(f.f.curve()->point_name(p), k);
            return out;
        })
        .def("is_harmonic_at", [](const PyFunction& f, const std::string& point) {
            return is_harmonic_at(f.f, f.f.curve()->parse_point(point));
        })
        .def("__eq__", [](const PyFunction& f, const PyFunction& g) { return f.f == g.f; });

    m.def("module_degree", [](const std::vector<PyFunction>& gens) -> py::object {
        std::vector<PLFunction> fs;
        for (const auto& g : gens) fs.push_back(g.f);
        auto d = module_degree(fs);
        if (!d) return py::float_(-HUGE_VAL);
        return py::int_(*d);
    });

    py::class_<PyComplex>(m, "Complex")
        .def_static("from_json", [](const std::string& text) { return PyComplex{io::read_complex(text)}; })
        .def_static("hypersurface", [](const std::string& poly) {
            TropPoly f = TropPoly::parse(poly, 2);
            return PyComplex{hypersurface2(f, auto_window(f))};
        }, "Weighted corner locus of a two-variable polynomial given as 'coeff : e1 e2' lines.")
        .def("to_json", [](const PyComplex& k) { return io::write_complex(k.k); })
        .def_property_readonly("balanced", [](const PyComplex& k) { return check_balanced(k.k).balanced; })
        .def_property_readonly("vertices", [](const PyComplex& k) {
            py::list out;
            for (const auto& v : k.k.vertices) out.append(point_tuple(v));
            return out;
        })
        .def("fit", [](const PyComplex& k) { return fit_tropical_polynomial(k.k).str(); })
        .def("degree", [](const PyComplex& k) { return poly_degree(fit_tropical_polynomial(k.k)); })
        .def("ingest", [](const PyComplex& k) {
            auto in = ingest_balanced(k.k);
            std::vector<PyFunction> fs;
            for (const auto& f : in.fs) fs.push_back({f});
            return py::make_tuple(PyCurve{in.curve}, fs);
        })
        .def("svg", [](const PyComplex& k) { return complex_svg(k.k); })
        .def("csv", [](const PyComplex& k) { return complex_csv(k.k); })
        .def("__eq__", [](const PyComplex& a, const PyComplex& b) { return canonical_complex(a.k) == canonical_complex(b.k); });

    m.def("realize", [](const std::vector<PyFunction>& fs) {
        if (fs.empty()) throw TropError("realize needs at least one function");
        std::vector<PLFunction> v;
        for (const auto& f : fs) v.push_back(f.f);
        return PyComplex{realize(fs.front().f.curve(), v).image};
    });
    m.def("intersect", [](const PyComplex& a, const PyComplex& b) {
        py::list out;
        for (const auto& p : intersect(a.k, b.k)) out.append(py::make_tuple(point_tuple(p.point), p.mult));
        return out;
    });

    m.def("run_suite", [](const std::string& name, std::uint64_t seed) {
        SuiteResult r;
        {
            py::gil_scoped_release unlocked;
            r = run_suite(name, seed);
        }
        return py::make_tuple(r.cases, r.failed);
    }, py::arg("name"), py::arg("seed") = 1);

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    }, "Runs one command line of the tropcurve tool; returns (exit code, stdout, stderr).");
}
