#pragma once

#include <numbers>
#include <vector>

#include "pertop/field.hpp"
#include "pertop/grid.hpp"
#include "pertop/persistence.hpp"

namespace pertop {

// One half-plane leaf of the strict-box foliation: a unit direction with all
// positive components and a zero-sum offset.
struct AdmissiblePair {
    std::vector<double> direction;
    std::vector<double> offset;

    int arity() const { return int(direction.size()); }
    double min_direction() const;
    bool operator==(const AdmissiblePair&) const = default;
};

void validate(const AdmissiblePair& pair);

// A point on a leaf: the pair plus 1-d coordinates s < t along it.
struct LeafPoint {
    AdmissiblePair pair;
    double s = 0.0;
    double t = 0.0;
};

// Pointwise max of the rescaled shifted components: max_i (f_i - b_i) / l_i.
ScalarField reduce(const MultiField& fields, const AdmissiblePair& pair);

// (s*l + b, t*l + b).
RankQuery leaf_point_to_query(const LeafPoint& point);

// The unique k=2 leaf point whose query is ((alpha, u), (beta, v)).
// Requires alpha < beta and u < v.
LeafPoint leaf_params(double alpha, double u, double beta, double v);

// alpha = 0 sits on the closure of the admissible set; callers flag such
// output rows as unreliable.
bool leaf_boundary_proximate(double alpha);

inline constexpr double kDefaultAngleMargin = std::numbers::pi / 64;

// Directions (cos theta, sin theta) for midpoint angles in
// (margin, pi/2 - margin), crossed with offsets (c, -c) for midpoint values
// of [-offset_range, offset_range].
std::vector<AdmissiblePair> sample_admissible_2(int n_angles, int n_offsets, double offset_range,
                                                double angle_margin = kDefaultAngleMargin);

// Rank of (foreground, phi restricted to it) at (u, v), evaluated through the
// ambient pair (distance transform, phi) on the leaf through
// ((alpha, u), (beta, v)). Requires 0 <= alpha < beta and u < v.
long recover_rank(const BinaryGrid& grid, const ScalarField& phi, double u, double v,
                  double alpha, double beta);

// JSON array of {"l": [...], "b": [...]}.
std::string leaves_to_json(const std::vector<AdmissiblePair>& leaves);

}  // namespace pertop
