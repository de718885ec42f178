#include "tropcurve/morphism.hpp"

namespace tropcurve {

Morphism random_morphism(RandomSource& rng, const CurvePtr& target, bool extras) {
    CurveDescription d = describe(*target);
    MorphismDescription md;
    std::vector<std::string> finite_vertices;
    for (const auto& v : d.vertices) {
        md.vertex_map[v.id] = v.id;
        if (!v.at_infinity) finite_vertices.push_back(v.id);
    }
    int fresh = 0;
    auto unused = [&](const std::string& stem) {
        std::string id;
        do id = stem + std::to_string(fresh++);
        while (target->find_edge(id) || target->find_vertex(id) || target->find_edge(id + "#1"));
        return id;
    };
    std::map<std::string, Int> class_degree;
    std::vector<std::size_t> foldable;
    for (std::size_t i = 0; i < d.edges.size(); ++i) {
        auto& e = d.edges[i];
        Int k;
        if (e.length.finite()) {
            k = rng.integer(1, 3);
            e.length = Extended(Rational(e.length.value() / k));
            if (e.v && *e.v != e.u) foldable.push_back(i);
        } else {
            auto [it, fresh] = class_degree.emplace(d.ray_classes.at(e.id), 0);
            if (fresh) it->second = rng.integer(1, 3);
            k = it->second;
        }
        md.edge_map[e.id] = {false, e.id};
        md.degrees[e.id] = k;
    }
    if (extras && !foldable.empty() && rng.coin(0.4)) {
        auto e = d.edges[rng.pick(foldable)];
        Int k = rng.integer(1, 3);
        Rational len = target->length(target->edge_index(e.id));
        bool flip = rng.coin();
        std::string id = unused("fold");
        d.edges.push_back({id, flip ? *e.v : e.u, flip ? e.u : *e.v, Extended(Rational(len / k))});
        md.edge_map[id] = {false, e.id};
        md.degrees[id] = k;
    }
    for (Int i = extras ? rng.integer(0, 2) : 0; i > 0; --i) {
        std::string at = rng.pick(finite_vertices), id = unused("pend"), tip = unused("tip");
        d.vertices.push_back({tip, false});
        d.edges.push_back({id, at, tip, Extended(rng.positive_rational())});
        md.vertex_map[tip] = at;
        md.edge_map[id] = {true, at};
        md.degrees[id] = 0;
    }
    if (extras && rng.coin(0.3)) {
        std::string at = rng.pick(finite_vertices);
        std::string id = unused("sink");
        d.edges.push_back({id, at, std::nullopt, Extended::pos_inf()});
        d.ray_classes[id] = id;
        md.edge_map[id] = {true, at};
        md.degrees[id] = 0;
    }
    return make_morphism(build_curve(d), target, md);
}

}  // namespace tropcurve
