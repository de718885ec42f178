#include "tropcurve/io.hpp"

#include <json.hpp>

#include "tropcurve/errors.hpp"

namespace tropcurve::io {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

[[noreturn]] void shape_error(const std::string& where, const std::string& msg) {
    throw ParseError((where.empty() ? std::string("/") : where) + ": " + msg);
}

json parse_text(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        std::size_t byte = e.byte == 0 ? 0 : e.byte - 1;
        throw ParseError("malformed JSON at " + describe_position(text, byte) + ": " + e.what(), byte);
    }
}

// A JSON value together with its pointer, for error messages.
struct Node {
    const json& j;
    std::string path;

    Node at(const std::string& key) const {
        if (!j.is_object()) shape_error(path, "expected an object");
        auto it = j.find(key);
        if (it == j.end()) shape_error(path, "missing key '" + key + "'");
        return {*it, path + "/" + key};
    }
    std::optional<Node> find(const std::string& key) const {
        if (!j.is_object()) shape_error(path, "expected an object");
        auto it = j.find(key);
        if (it == j.end() || it->is_null()) return std::nullopt;
        return Node{*it, path + "/" + key};
    }
    Node at(std::size_t i) const { return {j.at(i), path + "/" + std::to_string(i)}; }

    const json& array(std::optional<std::size_t> size = {}) const {
        if (!j.is_array()) shape_error(path, "expected an array");
        if (size && j.size() != *size) shape_error(path, "expected " + std::to_string(*size) + " entries");
        return j;
    }
    const json& object() const {
        if (!j.is_object()) shape_error(path, "expected an object");
        return j;
    }
    std::string str() const {
        if (!j.is_string()) shape_error(path, "expected a string");
        return j.get<std::string>();
    }
    Int integer() const {
        if (!j.is_number_integer()) shape_error(path, "expected an integer");
        return j.get<Int>();
    }
    bool boolean() const {
        if (!j.is_boolean()) shape_error(path, "expected true or false");
        return j.get<bool>();
    }
    Rational rational() const {
        if (j.is_number_integer()) return Rational(static_cast<long>(j.get<Int>()));
        if (j.is_number_float()) shape_error(path, "floats are not accepted, write the rational as a \"p/q\" string");
        if (!j.is_string()) shape_error(path, "expected a rational as a \"p/q\" string");
        try {
            return parse_rational(j.get<std::string>());
        } catch (const ParseError& e) {
            shape_error(path, e.what());
        }
    }
    Extended extended() const {
        if (j.is_string()) {
            try {
                return parse_extended(j.get<std::string>());
            } catch (const ParseError& e) {
                shape_error(path, e.what());
            }
        }
        return Extended(rational());
    }
};

Node root(const json& j) { return {j, ""}; }

void pretty_into(const ojson& j, int depth, std::string& out) {
    std::string pad(2 * (depth + 1), ' '), close(2 * depth, ' ');
    bool flat = j.is_primitive() || j.empty();
    if (!flat) {
        flat = j.dump().size() <= 72;
        for (const auto& x : j) flat = flat && !x.is_object();
    }
    if (flat) {
        out += j.dump();
        return;
    }
    out += j.is_array() ? "[\n" : "{\n";
    std::size_t i = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        out += pad;
        if (j.is_object()) out += ojson(it.key()).dump() + ": ";
        pretty_into(*it, depth + 1, out);
        out += i + 1 < j.size() ? ",\n" : "\n";
    }
    out += close + (j.is_array() ? "]" : "}");
}

std::string dump(const ojson& j) { return pretty(j.dump()); }

std::string ext_text(const Extended& x) { return x.finite() ? to_string(x.value()) : (x.is_pos_inf() ? "inf" : "-inf"); }

}  // namespace

std::string pretty(std::string_view json_text) {
    std::string out;
    pretty_into(ojson::parse(json_text.begin(), json_text.end()), 0, out);
    return out + "\n";
}

std::string describe_position(std::string_view text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

// ---- curves ----

CurveDescription read_curve(std::string_view text) {
    json j = parse_text(text);
    Node r = root(j);
    CurveDescription d;
    const json& vs = r.at("vertices").array();
    for (std::size_t i = 0; i < vs.size(); ++i) {
        Node v = r.at("vertices").at(i);
        auto inf = v.find("at_infinity");
        d.vertices.push_back({v.at("id").str(), inf ? inf->boolean() : false});
    }
    const json& es = r.at("edges").array();
    for (std::size_t i = 0; i < es.size(); ++i) {
        Node e = r.at("edges").at(i);
        auto v = e.find("v");
        Extended len = e.at("length").extended();
        d.edges.push_back({e.at("id").str(), e.at("u").str(), v ? std::optional(v->str()) : std::nullopt, len});
    }
    if (auto rc = r.find("ray_classes"))
        for (const auto& [k, v] : rc->object().items()) d.ray_classes[k] = Node{v, rc->path + "/" + k}.str();
    return d;
}

std::string write_curve(const CurveDescription& d) {
    ojson j;
    j["vertices"] = ojson::array();
    for (const auto& v : d.vertices) j["vertices"].push_back({{"id", v.id}, {"at_infinity", v.at_infinity}});
    j["edges"] = ojson::array();
    for (const auto& e : d.edges) {
        ojson o{{"id", e.id}, {"u", e.u}};
        if (e.v) o["v"] = *e.v;
        o["length"] = ext_text(e.length);
        j["edges"].push_back(o);
    }
    j["ray_classes"] = ojson::object();
    for (const auto& [k, v] : d.ray_classes) j["ray_classes"][k] = v;
    return dump(j);
}

// ---- functions ----

PLFunction read_function(const CurvePtr& c, std::string_view text) {
    json j = parse_text(text);
    if (j.is_string() && j.get<std::string>() == "-inf") return PLFunction::neg_inf(c);
    Node r = root(j);
    std::map<std::string, UserProfile> edges;
    std::map<std::string, Rational> isolated;
    for (const auto& [id, v] : r.object().items()) {
        Node e{v, "/" + id};
        if (id == "#vertices") {
            for (const auto& [vid, val] : e.object().items()) isolated[vid] = Node{val, e.path + "/" + vid}.rational();
            continue;
        }
        UserProfile p;
        Node bps = e.at("breakpoints");
        for (std::size_t i = 0; i < bps.array().size(); ++i) {
            Node bp = bps.at(i);
            bp.array(2);
            p.breakpoints.push_back({bp.at(std::size_t(0)).rational(), bp.at(std::size_t(1)).rational()});
        }
        if (auto s = e.find("slope_at_infinity")) p.slope_at_infinity = s->integer();
        edges[id] = std::move(p);
    }
    return make_function(c, edges, isolated);
}

std::string write_function(const PLFunction& f) {
    if (f.is_neg_inf()) return "\"-inf\"\n";
    const Curve& c = *f.curve();
    ojson j = ojson::object();
    for (const auto& [id, p] : user_profiles(f)) {
        ojson bps = ojson::array();
        for (const auto& [t, v] : p.breakpoints) bps.push_back({to_string(t), to_string(v)});
        ojson o{{"breakpoints", bps}};
        auto e = c.find_edge(id);
        if (e && c.is_infinite(*e)) o["slope_at_infinity"] = p.slope_at_infinity;
        j[id] = o;
    }
    for (std::size_t v = 0; v < c.num_vertices(); ++v)
        if (c.incident(v).empty() && !c.vertex(v).at_infinity) j["#vertices"][c.vertex(v).id] = to_string(f.vertex_value(v));
    return dump(j);
}

// ---- divisors ----

Divisor read_divisor(const CurvePtr& c, std::string_view text) {
    json j = parse_text(text);
    Node r = root(j);
    std::vector<std::pair<PointRef, Int>> terms;
    for (std::size_t i = 0; i < r.array().size(); ++i) {
        Node t = r.at(i);
        t.array(2);
        terms.push_back({c->parse_point(t.at(std::size_t(0)).str()), t.at(std::size_t(1)).integer()});
    }
    return make_divisor(c, terms);
}

std::string write_divisor(const Divisor& d) {
    ojson j = ojson::array();
    for (const auto& [p, k] : d.sorted()) j.push_back({d.curve->point_name(p), k});
    return dump(j);
}

// ---- morphisms ----

MorphismDescription read_morphism(std::string_view text) {
    json j = parse_text(text);
    Node r = root(j);
    MorphismDescription m;
    Node vm = r.at("vertex_map");
    for (const auto& [k, v] : vm.object().items()) m.vertex_map[k] = Node{v, vm.path + "/" + k}.str();
    Node em = r.at("edge_map");
    for (const auto& [k, v] : em.object().items()) {
        Node e{v, em.path + "/" + k};
        auto edge = e.find("edge");
        auto vertex = e.find("vertex");
        if (bool(edge) == bool(vertex)) shape_error(e.path, "expected exactly one of 'edge' and 'vertex'");
        m.edge_map[k] = edge ? MorphismDescription::Image{false, edge->str()} : MorphismDescription::Image{true, vertex->str()};
    }
    Node dg = r.at("degrees");
    for (const auto& [k, v] : dg.object().items()) m.degrees[k] = Node{v, dg.path + "/" + k}.integer();
    return m;
}

std::string write_morphism(const MorphismDescription& m) {
    ojson j;
    j["vertex_map"] = ojson::object();
    for (const auto& [k, v] : m.vertex_map) j["vertex_map"][k] = v;
    j["edge_map"] = ojson::object();
    for (const auto& [k, v] : m.edge_map) j["edge_map"][k] = ojson{{v.collapsed ? "vertex" : "edge", v.id}};
    j["degrees"] = ojson::object();
    for (const auto& [k, v] : m.degrees) j["degrees"][k] = v;
    return dump(j);
}

// ---- complexes ----

PolyComplex1D read_complex(std::string_view text) {
    json j = parse_text(text);
    Node r = root(j);
    PolyComplex1D k;
    Int dim = r.at("dim").integer();
    if (dim < 1) shape_error("/dim", "dimension must be positive");
    k.dim = static_cast<std::size_t>(dim);
    Node vs = r.at("vertices");
    for (std::size_t i = 0; i < vs.array().size(); ++i) {
        Node v = vs.at(i);
        RatVec p;
        for (std::size_t c = 0; c < v.array(k.dim).size(); ++c) p.push_back(v.at(c).rational());
        k.vertices.push_back(p);
    }
    auto index = [&](const Node& n) {
        Int i = n.integer();
        if (i < 0) shape_error(n.path, "negative vertex index");
        return static_cast<std::size_t>(i);
    };
    if (auto ss = r.find("segments"))
        for (std::size_t i = 0; i < ss->array().size(); ++i) {
            Node s = ss->at(i);
            s.array(3);
            k.segments.push_back({index(s.at(std::size_t(0))), index(s.at(1)), s.at(2).integer()});
        }
    if (auto rs = r.find("rays"))
        for (std::size_t i = 0; i < rs->array().size(); ++i) {
            Node ray = rs->at(i);
            ray.array(3);
            IntVec d;
            Node dn = ray.at(1);
            for (std::size_t c = 0; c < dn.array(k.dim).size(); ++c) d.push_back(dn.at(c).integer());
            k.rays.push_back({index(ray.at(std::size_t(0))), d, ray.at(2).integer()});
        }
    validate_structure(k);
    return k;
}

std::string write_complex(const PolyComplex1D& k) {
    ojson j;
    j["dim"] = k.dim;
    j["vertices"] = ojson::array();
    for (const auto& v : k.vertices) {
        ojson p = ojson::array();
        for (const auto& x : v) p.push_back(to_string(x));
        j["vertices"].push_back(p);
    }
    j["segments"] = ojson::array();
    for (const auto& s : k.segments) j["segments"].push_back({s.a, s.b, s.weight});
    j["rays"] = ojson::array();
    for (const auto& r : k.rays) j["rays"].push_back({r.from, r.dir, r.weight});
    return dump(j);
}

// ---- polynomials ----

TropPoly read_poly(std::string_view text) {
    json j = parse_text(text);
    Node r = root(j);
    Int vars = r.at("vars").integer();
    if (vars < 1) shape_error("/vars", "number of variables must be positive");
    TropPoly::Terms terms;
    Node ts = r.at("terms");
    for (std::size_t i = 0; i < ts.array().size(); ++i) {
        Node t = ts.at(i);
        IntVec e;
        Node en = t.at("exp");
        for (std::size_t c = 0; c < en.array(vars).size(); ++c) e.push_back(en.at(c).integer());
        if (terms.count(e)) shape_error(t.path, "repeated exponent");
        terms[e] = t.at("coeff").rational();
    }
    return TropPoly(static_cast<std::size_t>(vars), terms);
}

std::string write_poly(const TropPoly& f) {
    ojson j;
    j["vars"] = f.vars();
    j["terms"] = ojson::array();
    for (const auto& [e, c] : f.terms()) j["terms"].push_back({{"exp", e}, {"coeff", to_string(c)}});
    return dump(j);
}

// ---- subgraphs and embeddings ----

SubgraphSpec read_subgraph(std::string_view text) {
    json j = parse_text(text);
    Node r = root(j);
    SubgraphSpec s;
    if (auto ps = r.find("points"))
        for (std::size_t i = 0; i < ps->array().size(); ++i) s.points.push_back(ps->at(i).str());
    if (auto es = r.find("edges"))
        for (std::size_t i = 0; i < es->array().size(); ++i) s.edges.push_back(es->at(i).str());
    if (auto is = r.find("intervals"))
        for (std::size_t i = 0; i < is->array().size(); ++i) {
            Node n = is->at(i);
            s.intervals.push_back({n.at("edge").str(), n.at("a").rational(), n.at("b").extended()});
        }
    return s;
}

std::string write_subgraph(const SubgraphSpec& s) {
    ojson j;
    j["points"] = s.points;
    j["edges"] = s.edges;
    j["intervals"] = ojson::array();
    for (const auto& i : s.intervals) j["intervals"].push_back({{"edge", i.edge}, {"a", to_string(i.a)}, {"b", ext_text(i.b)}});
    return dump(j);
}

Embedding read_embedding(const CurvePtr& source, const CurvePtr& target, std::string_view text) {
    json j = parse_text(text);
    Node r = root(j);
    Embedding emb{source, target, {}, {}};
    Node vs = r.at("vertices");
    for (std::size_t v = 0; v < source->num_vertices(); ++v)
        emb.vertex_image.push_back(target->parse_point(vs.at(source->vertex(v).id).str()));
    Node es = r.at("edges");
    for (std::size_t e = 0; e < source->num_edges(); ++e) {
        Node n = es.at(source->edge(e).id);
        auto rev = n.find("reversed");
        emb.edge_image.push_back({target->edge_index(n.at("edge").str()), n.at("start").rational(), rev ? rev->boolean() : false});
    }
    validate_embedding(emb);
    return emb;
}

std::string write_embedding(const Embedding& e) {
    ojson j;
    j["vertices"] = ojson::object();
    for (std::size_t v = 0; v < e.source->num_vertices(); ++v)
        j["vertices"][e.source->vertex(v).id] = e.target->point_name(e.vertex_image[v]);
    j["edges"] = ojson::object();
    for (std::size_t i = 0; i < e.source->num_edges(); ++i) {
        const auto& im = e.edge_image[i];
        j["edges"][e.source->edge(i).id] = {{"edge", e.target->edge(im.edge).id}, {"start", to_string(im.start)}, {"reversed", im.reversed}};
    }
    return dump(j);
}

std::string rational_report(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return "\"" + to_string(q) + "\"";
}

std::string point_report(const RatVec& p) {
    std::string s = "[";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + rational_report(p[i]);
    return s + "]";
}

}  // namespace tropcurve::io
