#pragma once

#include "tropcurve/random.hpp"
#include "tropcurve/rat_fun.hpp"

namespace tropcurve {

struct RandomCurveOptions {
    int max_vertices = 6;
    int max_extra_edges = 3;
    int max_rays = 2;
    int ray_labels = 2;  // class labels are drawn from this many
    bool loops = true;
};

// Connected curve with random rational lengths.
CurvePtr random_curve(RandomSource& rng, const RandomCurveOptions& opts = {});
// Disjoint union of `parts` random connected curves (a plain connected curve when parts == 1).
CurvePtr random_disconnected_curve(RandomSource& rng, int parts, const RandomCurveOptions& opts = {});

PointRef random_finite_point(RandomSource& rng, const Curve& c);
// Nonempty valid subgraph made of a few points, intervals and whole edges.
Subgraph random_subgraph(RandomSource& rng, const CurvePtr& c);
// Tropical sum of a few scaled products of chip-firing moves and their inverses.
PLFunction random_function(RandomSource& rng, const CurvePtr& c, int terms = 3);

}  // namespace tropcurve
