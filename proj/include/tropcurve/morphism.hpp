#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tropcurve/germ.hpp"
#include "tropcurve/pl_function.hpp"
#include "tropcurve/random.hpp"

namespace tropcurve {

// Image of a stored source edge: a stored target edge, or a target vertex when collapsed.
struct EdgeTarget {
    bool collapsed = false;
    std::size_t index = 0;
    friend bool operator==(const EdgeTarget&, const EdgeTarget&) = default;
};

// Morphism between the fixed (loop-split) models of two curves. deg[e] is 0 exactly for collapsed
// edges. The orientation of a non-collapsed edge image follows from the vertex map.
struct Morphism {
    CurvePtr source, target;
    std::vector<std::size_t> vertex_map;
    std::vector<EdgeTarget> edge_map;
    std::vector<Int> deg;
};

// User-level description: vertex ids, edge ids (loops as a whole), degrees. A loop maps onto a loop
// or collapses; vertices synthesized for loops and rays are filled in automatically.
struct MorphismDescription {
    struct Image {
        bool collapsed = false;
        std::string id;  // target edge id, or target vertex id when collapsed
        friend bool operator==(const Image&, const Image&) = default;
    };
    std::map<std::string, std::string> vertex_map;
    std::map<std::string, Image> edge_map;
    std::map<std::string, Int> degrees;
    friend bool operator==(const MorphismDescription&, const MorphismDescription&) = default;
};

Morphism make_morphism(CurvePtr source, CurvePtr target, const MorphismDescription& d);
MorphismDescription describe(const Morphism& m);

Morphism identity_morphism(const CurvePtr& c);

struct MorphismReport {
    bool ok = true;
    std::vector<std::string> violations;
};
MorphismReport validate_morphism(const Morphism& m);

// True when the image of a non-collapsed edge runs against the target edge's orientation.
bool reversed(const Morphism& m, std::size_t e);
PointRef apply(const Morphism& m, const PointRef& p);

PLFunction pullback(const Morphism& m, const PLFunction& f);
// second ∘ first.
Morphism compose(const Morphism& first, const Morphism& second);

struct WeightReport {
    bool is_weight = false;
    std::string reason;                    // empty when is_weight
    std::map<std::string, Int> edge_weights;  // user-level target edge id -> degree
};
WeightReport weight_check(const Morphism& m);

// gcd of the slopes of gens on the user-level edge `edge`.
Int weight_from_generators(const std::vector<PLFunction>& gens, const std::string& edge);

// ---- localization ----

// "<edge>+" leaves p toward increasing user offsets of <edge>, "<edge>-" toward decreasing ones.
std::string direction_id(const Curve& c, const Direction& d);

class Localization {
public:
    // Empty order selects the curve's default direction order.
    Localization(CurvePtr c, const PointRef& x, const std::vector<std::string>& order = {});

    const PointRef& point() const { return x_; }
    const std::vector<Direction>& order() const { return dirs_; }
    std::vector<std::string> order_ids() const;
    std::size_t n() const { return dirs_.size(); }

    Germ apply(const PLFunction& f) const;
    // A function whose germ at the point is g: constant away from small tents on the incident edges.
    PLFunction preimage(const Germ& g) const;

private:
    CurvePtr c_;
    PointRef x_;
    std::vector<Direction> dirs_;
};

struct SurjectivityReport {
    std::size_t valence = 0;
    int sampled = 0;
    int matched = 0;
    bool ok() const { return sampled == matched; }
};
SurjectivityReport localization_surjectivity(const CurvePtr& c, const PointRef& x, RandomSource& rng, int samples = 20);

// Slopes of pulled-back germs at the preimage of x lie in w_1 Z x ... x w_n Z.
struct LocalLattice {
    PointRef source_point;
    std::vector<std::string> order;
    IntVec weights;
};
LocalLattice weighted_local_image(const Morphism& m, const PointRef& x);

// Valid morphism onto `target` from a rescaled copy with random degrees. With `extras`, the source may
// also carry collapsed pendant edges and rays and a second edge folded onto an existing one.
Morphism random_morphism(RandomSource& rng, const CurvePtr& target, bool extras = true);

}  // namespace tropcurve
