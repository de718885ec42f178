#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "tropcurve/errors.hpp"
#include "tropcurve/hypersurface.hpp"
#include "tropcurve/io.hpp"
#include "tropcurve/morphism.hpp"
#include "tropcurve/realization.hpp"
#include "tropcurve/suites.hpp"

namespace tropcurve::cli {

namespace {

using ojson = nlohmann::ordered_json;

// Malformed file content, already prefixed with the file name.
struct FileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PropertyFalse : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw TropError("cannot read '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw TropError("cannot write '" + path + "'");
    out << text;
}

template <class F>
auto parsing(const std::string& path, F&& f) {
    try {
        return f(slurp(path));
    } catch (const ParseError& e) {
        throw FileError(path + ": " + e.what());
    }
}

CurvePtr load_curve(const std::string& path) {
    return build_curve(parsing(path, [](const std::string& t) { return io::read_curve(t); }));
}
PLFunction load_function(const CurvePtr& c, const std::string& path) {
    return parsing(path, [&](const std::string& t) { return io::read_function(c, t); });
}
PolyComplex1D load_complex(const std::string& path) {
    return parsing(path, [](const std::string& t) { return io::read_complex(t); });
}

ojson as_json(const std::string& file_text) { return ojson::parse(file_text); }

ojson rat(const Rational& q) {
    if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
    return to_string(q);
}

ojson point(const RatVec& p) {
    ojson a = ojson::array();
    for (const auto& x : p) a.push_back(rat(x));
    return a;
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    for (std::string item; std::getline(in, item, ',');)
        if (!item.empty()) out.push_back(item);
    return out;
}

struct Ctx {
    std::ostream& out;
    bool json = false;
    std::string out_path;

    // File-format results go to --out when given, otherwise to stdout.
    void emit_file(const std::string& text) const {
        if (out_path.empty()) out << text;
        else spit(out_path, text);
    }
    void emit(const ojson& report, const std::string& text) const {
        if (json) out << report.dump() << "\n";
        else out << text << "\n";
    }
};

using Handler = std::function<int(Ctx&)>;

void req(CLI::App& app, const std::string& flag, std::string& target, const std::string& help) {
    app.add_option(flag, target, help)->required();
}

struct Command {
    std::string name, help;
    std::function<void(CLI::App&)> options;
    Handler run;
    bool writes_file = false;
};

std::vector<Command> commands() {
    // Option storage shared by the handlers of one invocation.
    struct Opts {
        std::string curve, fn, sub, point, order, l = "inf", source, target, morphism, complex, poly, a, b, s;
        std::string curve1, curve2, common, emb1, emb2, fn1, fn2, format, suite;
        std::vector<std::string> fns, parts;
        bool parallel = false;
        std::uint64_t seed = 1;
    };
    static Opts o;
    o = Opts{};

    std::vector<Command> cs;
    cs.push_back({"check-curve", "validate a curve file", [&](CLI::App& a) { req(a, "--curve", o.curve, "curve file"); },
                  [](Ctx& c) {
                      auto cv = load_curve(o.curve);
                      auto d = describe(*cv);
                      std::size_t rays = cv->infinite_edges().size();
                      c.emit(ojson{{"valid", true}, {"vertices", d.vertices.size()}, {"edges", d.edges.size()}, {"rays", rays},
                                   {"components", cv->num_components()}},
                             "valid curve: " + std::to_string(d.vertices.size()) + " vertices, " + std::to_string(d.edges.size()) +
                                 " edges (" + std::to_string(rays) + " rays), " + std::to_string(cv->num_components()) +
                                 " component(s)");
                      return kOk;
                  }});
    cs.push_back({"canonical", "canonical model of a connected curve", [&](CLI::App& a) { req(a, "--curve", o.curve, "curve file"); },
                  [](Ctx& c) {
                      c.emit_file(io::write_curve(describe(*canonical_model(*load_curve(o.curve)))));
                      return kOk;
                  },
                  true});
    cs.push_back({"chipfire", "chip-firing function -min(dist to subgraph, l)",
                  [&](CLI::App& a) {
                      req(a, "--curve", o.curve, "curve file");
                      req(a, "--sub", o.sub, "subgraph file");
                      a.add_option("--l", o.l, "distance cap, a rational or inf");
                  },
                  [](Ctx& c) {
                      auto cv = load_curve(o.curve);
                      auto g = make_subgraph(cv, parsing(o.sub, [](const std::string& t) { return io::read_subgraph(t); }));
                      c.emit_file(io::write_function(chip_fire(g, parse_extended(o.l))));
                      return kOk;
                  },
                  true});
    cs.push_back({"div", "principal divisor of a function",
                  [&](CLI::App& a) {
                      req(a, "--curve", o.curve, "curve file");
                      req(a, "--fn", o.fn, "function file");
                  },
                  [](Ctx& c) {
                      auto cv = load_curve(o.curve);
                      Divisor d = div_of(load_function(cv, o.fn));
                      ojson j = ojson::object();
                      std::string text = "{";
                      for (const auto& [p, k] : d.sorted()) {
                          std::string name = cv->point_name(p);
                          j[name] = k;
                          text += (text.size() > 1 ? ", " : "") + ojson(name).dump() + ": " + std::to_string(k);
                      }
                      c.emit(j, text + "}");
                      return kOk;
                  }});
    cs.push_back({"degree", "degree of the module generated by functions",
                  [&](CLI::App& a) {
                      req(a, "--curve", o.curve, "curve file");
                      a.add_option("--fn", o.fns, "generator function files")->required();
                  },
                  [](Ctx& c) {
                      auto cv = load_curve(o.curve);
                      std::vector<PLFunction> gens;
                      for (const auto& f : o.fns) gens.push_back(load_function(cv, f));
                      auto d = module_degree(gens);
                      c.emit(ojson{{"degree", d ? ojson(*d) : ojson("-inf")}},
                             "module degree: " + (d ? std::to_string(*d) : std::string("-inf")));
                      return kOk;
                  }});
    cs.push_back({"harmonic", "harmonicity at a point, or the points where a function is not harmonic",
                  [&](CLI::App& a) {
                      req(a, "--curve", o.curve, "curve file");
                      req(a, "--fn", o.fn, "function file");
                      a.add_option("--point", o.point, "point name");
                  },
                  [](Ctx& c) {
                      auto cv = load_curve(o.curve);
                      auto f = load_function(cv, o.fn);
                      if (!o.point.empty()) {
                          bool h = is_harmonic_at(f, cv->parse_point(o.point));
                          c.emit(ojson{{"point", o.point}, {"harmonic", h}}, (h ? "harmonic at " : "not harmonic at ") + o.point);
                          return h ? kOk : kPropertyFalse;
                      }
                      ojson bad = ojson::array();
                      std::string text;
                      for (const auto& [p, k] : div_of(f).sorted()) {
                          if (cv->is_infinity(p)) continue;
                          bad.push_back(cv->point_name(p));
                          text += (text.empty() ? "" : ", ") + cv->point_name(p);
                      }
                      c.emit(ojson{{"harmonic", bad.empty()}, {"not_harmonic_at", bad}},
                             bad.empty() ? "harmonic at every finite point" : "not harmonic at " + text);
                      return bad.empty() ? kOk : kPropertyFalse;
                  }});
    cs.push_back({"localize", "germ of a function at a point",
                  [&](CLI::App& a) {
                      req(a, "--curve", o.curve, "curve file");
                      req(a, "--fn", o.fn, "function file");
                      req(a, "--point", o.point, "point name");
                      a.add_option("--order", o.order, "comma-separated direction ids");
                  },
                  [](Ctx& c) {
                      auto cv = load_curve(o.curve);
                      Localization loc(cv, cv->parse_point(o.point), split_commas(o.order));
                      Germ g = loc.apply(load_function(cv, o.fn));
                      ojson slopes = ojson::array();
                      std::string st;
                      for (std::size_t i = 0; i < loc.n(); ++i) {
                          slopes.push_back(g.slopes()[i]);
                          st += (i ? ", " : "") + loc.order_ids()[i] + " " + std::to_string(g.slopes()[i]);
                      }
                      Int omega = germ_omega(g);
                      c.emit(ojson{{"point", o.point}, {"order", loc.order_ids()}, {"coeff", rat(g.coeff())}, {"slopes", slopes},
                                   {"omega", omega}},
                             "value " + to_string(g.coeff()) + "; slopes " + st + "; omega " + std::to_string(omega));
                      return kOk;
                  }});

    auto morphism_opts = [&](CLI::App& a) {
        req(a, "--source", o.source, "source curve file");
        req(a, "--target", o.target, "target curve file");
        req(a, "--morphism", o.morphism, "morphism file");
    };
    auto load_morphism = [] {
        auto m = make_morphism(load_curve(o.source), load_curve(o.target),
                               parsing(o.morphism, [](const std::string& t) { return io::read_morphism(t); }));
        auto rep = validate_morphism(m);
        if (!rep.ok) {
            std::string msg = "not a morphism:";
            for (const auto& v : rep.violations) msg += "\n  " + v;
            throw TropError(msg);
        }
        return m;
    };
    cs.push_back({"pullback", "pull a target function back to the source",
                  [=](CLI::App& a) {
                      morphism_opts(a);
                      a.add_option("--fn", o.fn, "function file on the target")->required();
                  },
                  [=](Ctx& c) {
                      auto m = load_morphism();
                      c.emit_file(io::write_function(pullback(m, load_function(m.target, o.fn))));
                      return kOk;
                  },
                  true});
    cs.push_back({"weight", "check whether a morphism is a weight", morphism_opts, [=](Ctx& c) {
                      auto w = weight_check(load_morphism());
                      ojson ws = ojson::object();
                      std::string text;
                      for (const auto& [e, k] : w.edge_weights) {
                          ws[e] = k;
                          text += (text.empty() ? "" : ", ") + e + "=" + std::to_string(k);
                      }
                      c.emit(ojson{{"is_weight", w.is_weight}, {"reason", w.reason}, {"edge_weights", ws}},
                             w.is_weight ? "weight: " + text : "not a weight: " + w.reason);
                      return w.is_weight ? kOk : kPropertyFalse;
                  }});
    cs.push_back({"restrict", "restrict a function to the components of a subgraph",
                  [&](CLI::App& a) {
                      req(a, "--curve", o.curve, "curve file");
                      req(a, "--fn", o.fn, "function file");
                      req(a, "--sub", o.sub, "subgraph file");
                  },
                  [](Ctx& c) {
                      auto cv = load_curve(o.curve);
                      auto g = make_subgraph(cv, parsing(o.sub, [](const std::string& t) { return io::read_subgraph(t); }));
                      auto parts = restrict_to(load_function(cv, o.fn), g);
                      ojson comps = ojson::array();
                      for (std::size_t k = 0; k < parts.size(); ++k)
                          comps.push_back({{"curve", as_json(io::write_curve(describe(*component_curve(g, k).curve)))},
                                           {"function", as_json(io::write_function(parts[k]))}});
                      c.emit_file(io::pretty(ojson{{"components", comps}}.dump()));
                      return kOk;
                  },
                  true});
    cs.push_back({"extend", "extend functions on subgraph components to the curve",
                  [&](CLI::App& a) {
                      req(a, "--curve", o.curve, "curve file");
                      req(a, "--sub", o.sub, "subgraph file");
                      a.add_option("--part", o.parts, "function files on the components, in order")->required();
                      a.add_option("--s", o.s, "negative slope away from the subgraph (default: steepest needed)");
                  },
                  [](Ctx& c) {
                      auto cv = load_curve(o.curve);
                      auto g = make_subgraph(cv, parsing(o.sub, [](const std::string& t) { return io::read_subgraph(t); }));
                      if (o.parts.size() != g.num_components())
                          throw TropError("subgraph has " + std::to_string(g.num_components()) + " components but " +
                                          std::to_string(o.parts.size()) + " parts were given");
                      std::vector<PLFunction> parts;
                      for (std::size_t k = 0; k < o.parts.size(); ++k) parts.push_back(load_function(component_curve(g, k).curve, o.parts[k]));
                      Int s = o.s.empty() ? -min_extension_slope(g, parts) : std::stoll(o.s);
                      c.emit_file(io::write_function(extend(g, parts, s)));
                      return kOk;
                  },
                  true});
    cs.push_back({"glue", "glue two curves along a common subcurve and glue two functions",
                  [&](CLI::App& a) {
                      req(a, "--curve1", o.curve1, "first curve");
                      req(a, "--curve2", o.curve2, "second curve");
                      req(a, "--common", o.common, "common subcurve");
                      req(a, "--emb1", o.emb1, "embedding of the common subcurve into the first curve");
                      req(a, "--emb2", o.emb2, "embedding of the common subcurve into the second curve");
                      req(a, "--fn1", o.fn1, "function on the first curve");
                      req(a, "--fn2", o.fn2, "function on the second curve");
                  },
                  [](Ctx& c) {
                      auto c1 = load_curve(o.curve1), c2 = load_curve(o.curve2), s = load_curve(o.common);
                      auto e1 = parsing(o.emb1, [&](const std::string& t) { return io::read_embedding(s, c1, t); });
                      auto e2 = parsing(o.emb2, [&](const std::string& t) { return io::read_embedding(s, c2, t); });
                      auto gl = glue(c1, c2, e1, e2);
                      auto h1 = load_function(c1, o.fn1), h2 = load_function(c2, o.fn2);
                      if (auto bad = glue_mismatch(h1, h2, gl)) throw PropertyFalse("functions disagree on the common part: " + *bad);
                      c.emit_file(io::pretty(ojson{{"curve", as_json(io::write_curve(describe(*gl.glued)))},
                                        {"function", as_json(io::write_function(glue_function(h1, h2, gl)))}}
                                      .dump()));
                      return kOk;
                  },
                  true});
    cs.push_back({"witness-disconnected", "witness that a curve is disconnected",
                  [&](CLI::App& a) { req(a, "--curve", o.curve, "curve file"); },
                  [](Ctx& c) {
                      auto w = disconnect_witness(load_curve(o.curve));
                      if (!w) throw PropertyFalse("curve is connected: no witness");
                      auto chk = check_witness(w->s, w->a1, w->a2, w->a3);
                      c.emit_file(io::pretty(ojson{{"s", as_json(io::write_function(w->s))},
                                        {"a1", rat(w->a1)},
                                        {"a2", rat(w->a2)},
                                        {"a3", rat(w->a3)},
                                        {"checks", {{"below_a3", chk.below_a3}, {"above_a1", chk.above_a1}, {"identity", chk.identity}}}}
                                      .dump()));
                      return chk.ok() ? kOk : kPropertyFalse;
                  },
                  true});
    cs.push_back({"realize", "image of a curve under a tuple of functions",
                  [&](CLI::App& a) {
                      req(a, "--curve", o.curve, "curve file");
                      a.add_option("--fn", o.fns, "coordinate function files")->required();
                  },
                  [](Ctx& c) {
                      auto cv = load_curve(o.curve);
                      std::vector<PLFunction> fs;
                      for (const auto& f : o.fns) fs.push_back(load_function(cv, f));
                      auto r = realize(cv, fs);
                      auto rep = check_realization(r);
                      c.emit_file(io::pretty(ojson{{"image", as_json(io::write_complex(r.image))},
                                        {"report",
                                         {{"injective", rep.injective},
                                          {"local_isometry", rep.local_isometry},
                                          {"parallel_respected", rep.parallel_respected},
                                          {"condition5_free", rep.condition5_free},
                                          {"notes", rep.notes}}}}
                                      .dump()));
                      return kOk;
                  },
                  true});
    cs.push_back({"balance", "check the balancing condition", [&](CLI::App& a) { req(a, "--complex", o.complex, "complex file"); },
                  [](Ctx& c) {
                      auto k = load_complex(o.complex);
                      auto rep = check_balanced(k);
                      ojson bad = ojson::array();
                      std::string text;
                      for (std::size_t v = 0; v < rep.defects.size(); ++v) {
                          if (std::all_of(rep.defects[v].begin(), rep.defects[v].end(), [](Int x) { return x == 0; })) continue;
                          bad.push_back({{"vertex", v}, {"defect", rep.defects[v]}});
                          text += "\n  vertex " + std::to_string(v) + ": defect " + ojson(rep.defects[v]).dump();
                      }
                      c.emit(ojson{{"balanced", rep.balanced}, {"unbalanced", bad}}, rep.balanced ? "balanced" : "not balanced:" + text);
                      return rep.balanced ? kOk : kPropertyFalse;
                  }});
    cs.push_back({"ingest", "curve and harmonic coordinates realizing a balanced complex",
                  [&](CLI::App& a) { req(a, "--complex", o.complex, "complex file"); },
                  [](Ctx& c) {
                      auto in = ingest_balanced(load_complex(o.complex));
                      ojson fs = ojson::array();
                      for (const auto& f : in.fs) fs.push_back(as_json(io::write_function(f)));
                      c.emit_file(io::pretty(ojson{{"curve", as_json(io::write_curve(describe(*in.curve)))}, {"functions", fs}}.dump()));
                      return kOk;
                  },
                  true});
    cs.push_back({"fitpoly", "tropical polynomial whose curve is a plane complex",
                  [&](CLI::App& a) { req(a, "--complex", o.complex, "complex file"); },
                  [](Ctx& c) {
                      c.emit_file(io::write_poly(fit_tropical_polynomial(load_complex(o.complex))));
                      return kOk;
                  },
                  true});
    cs.push_back({"hypersurface", "weighted corner locus of a two-variable polynomial",
                  [&](CLI::App& a) { req(a, "--poly", o.poly, "polynomial file"); },
                  [](Ctx& c) {
                      auto f = parsing(o.poly, [](const std::string& t) { return io::read_poly(t); });
                      c.emit_file(io::write_complex(hypersurface2(f, auto_window(f))));
                      return kOk;
                  },
                  true});

    auto pair_opts = [&](CLI::App& a) {
        req(a, "--a", o.a, "first plane complex");
        req(a, "--b", o.b, "second plane complex");
    };
    auto transversal = [](const std::function<int()>& body) {
        try {
            return body();
        } catch (const TropError& e) {
            if (std::string(e.what()).rfind("non-transversal", 0) == 0) throw PropertyFalse(e.what());
            throw;
        }
    };
    cs.push_back({"intersect", "transversal intersection points with multiplicities", pair_opts, [=](Ctx& c) {
                      return transversal([&] {
                          auto pts = intersect(load_complex(o.a), load_complex(o.b));
                          ojson j = ojson::array();
                          for (const auto& p : pts) j.push_back({{"point", point(p.point)}, {"mult", p.mult}});
                          c.out << j.dump() << "\n";
                          return kOk;
                      });
                  }});
    cs.push_back({"bezout", "compare the intersection count with the product of degrees", pair_opts, [=](Ctx& c) {
                      return transversal([&] {
                          auto r = bezout_check(load_complex(o.a), load_complex(o.b));
                          c.emit(ojson{{"sum", r.sum}, {"bound", r.bound}, {"ok", r.ok()}},
                                 "intersection multiplicities " + std::to_string(r.sum) + (r.ok() ? " <= " : " > ") +
                                     std::to_string(r.bound) + " = product of degrees");
                          return r.ok() ? kOk : kPropertyFalse;
                      });
                  }});
    cs.push_back({"selftest", "run the randomized invariant suites",
                  [&](CLI::App& a) {
                      a.add_flag("--parallel", o.parallel, "run suites concurrently");
                      a.add_option("--seed", o.seed, "random seed");
                      a.add_option("--suite", o.suite, "run a single suite");
                  },
                  [](Ctx& c) {
                      std::vector<SuiteResult> rs =
                          o.suite.empty() ? run_all_suites(o.parallel, o.seed) : std::vector<SuiteResult>{run_suite(o.suite, o.seed)};
                      ojson j = ojson::array();
                      std::string text;
                      int cases = 0, failed = 0;
                      for (const auto& r : rs) {
                          cases += r.cases;
                          failed += r.failed;
                          j.push_back({{"suite", r.name}, {"cases", r.cases}, {"failed", r.failed}, {"failures", r.failures}});
                          text += r.name + ": " + std::to_string(r.cases - r.failed) + "/" + std::to_string(r.cases) + " passed\n";
                          for (const auto& f : r.failures) text += "  " + f + "\n";
                      }
                      text += "total: " + std::to_string(cases - failed) + "/" + std::to_string(cases) + " passed";
                      c.emit(j, text);
                      return failed == 0 ? kOk : kPropertyFalse;
                  }});
    cs.push_back({"plot", "write a complex as SVG (plane only) or CSV",
                  [&](CLI::App& a) {
                      req(a, "--complex", o.complex, "complex file");
                      a.add_option("--format", o.format, "svg or csv (default: from the --out extension)")
                          ->check(CLI::IsMember({"svg", "csv"}));
                  },
                  [](Ctx& c) {
                      auto k = load_complex(o.complex);
                      std::string fmt = o.format;
                      if (fmt.empty()) {
                          auto dot = c.out_path.rfind('.');
                          fmt = dot == std::string::npos ? "svg" : c.out_path.substr(dot + 1);
                      }
                      if (fmt != "svg" && fmt != "csv") throw TropError("unknown plot format '" + fmt + "'");
                      c.emit_file(fmt == "svg" ? complex_svg(k) : complex_csv(k));
                      return kOk;
                  },
                  true});
    return cs;
}

}  // namespace

std::vector<std::string> subcommands() {
    std::vector<std::string> out;
    for (const auto& c : commands()) out.push_back(c.name);
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    auto cs = commands();
    if (args.empty() || args[0] == "--help" || args[0] == "-h") {
        (args.empty() ? err : out) << "usage: tropcurve <subcommand> [options] [--json]\nsubcommands:\n";
        for (const auto& c : cs) (args.empty() ? err : out) << "  " << c.name << "  " << c.help << "\n";
        return args.empty() ? kInputError : kOk;
    }
    auto it = std::find_if(cs.begin(), cs.end(), [&](const Command& c) { return c.name == args[0]; });
    if (it == cs.end()) {
        err << "unknown subcommand '" << args[0] << "'\n";
        return kUnknownCommand;
    }
    CLI::App app(it->help, "tropcurve " + it->name);
    Ctx ctx{out};
    app.add_flag("--json", ctx.json, "machine-readable output");
    if (it->writes_file || it->name == "plot") {
        auto* opt = app.add_option("--out", ctx.out_path, "write the result to this file");
        if (it->name == "plot") opt->required();
    }
    it->options(app);
    std::vector<std::string> rest(args.rbegin(), args.rend() - 1);
    try {
        app.parse(rest);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << it->name << ": " << e.what() << "\n";
        return kInputError;
    }
    try {
        return it->run(ctx);
    } catch (const PropertyFalse& e) {
        (ctx.json ? out : err) << (ctx.json ? ojson{{"ok", false}, {"reason", e.what()}}.dump() : std::string(e.what())) << "\n";
        return kPropertyFalse;
    } catch (const FileError& e) {
        err << "malformed file: " << e.what() << "\n";
        return kMalformedFile;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
}

}  // namespace tropcurve::cli
