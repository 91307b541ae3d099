#pragma once

#include <vector>

#include "pertop/foliation.hpp"
#include "pertop/grid.hpp"
#include "pertop/persistence.hpp"

namespace pertop {

// Nonnegative matching cost; +infinity means no admissible matching exists.
struct ExtendedCost {
    double value = 0.0;

    static ExtendedCost infinite();
    bool is_infinite() const;
    bool operator==(const ExtendedCost&) const = default;
};

// min{ max(|b_p - b_q|, |d_p - d_q|), max persistence / 2 }; the second term
// is the cost of deleting both points to the diagonal.
ExtendedCost point_cost(const DiagramPoint& p, const DiagramPoint& q);

// Bottleneck value of the optimal partial matching: finite points match
// finite points or the diagonal, essential births match essential births
// (infinite when their multiplicities differ). Exact: binary search over the
// finite candidate-cost set with augmenting-path feasibility tests.
ExtendedCost dmatch_1d(const PersistenceDiagram& a, const PersistenceDiagram& b);

// max over the supplied leaves of min_i l_i times the per-leaf bottleneck of
// the reduced filtrations. A lower bound of the sup over all leaves.
double dmatch_multi_lower_bound(const GridGraph& graph, const MultiField& f, const MultiField& g,
                                const std::vector<AdmissiblePair>& leaves);

PersistenceDiagram scale_diagram(const PersistenceDiagram& dgm, double mu);

}  // namespace pertop
