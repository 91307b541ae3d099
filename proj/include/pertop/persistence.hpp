#pragma once

#include <string>
#include <vector>

#include "pertop/field.hpp"
#include "pertop/grid.hpp"

namespace pertop {

struct DiagramPoint {
    double birth = 0.0;
    double death = 0.0;
    bool operator==(const DiagramPoint&) const = default;
};

// Multiset of finite (birth, death) pairs plus essential births, kept sorted.
struct PersistenceDiagram {
    std::vector<DiagramPoint> finite;
    std::vector<double> essential;
    bool operator==(const PersistenceDiagram&) const = default;
};

// Strict component-wise box in R^k x R^k.
struct RankQuery {
    std::vector<double> lower;
    std::vector<double> upper;
};

void validate(const RankQuery& query);

// Zeroth persistence diagram of the filtration where vertex x enters at f(x)
// and an edge at the larger endpoint value. Elder rule with ties broken by
// (value, pixel index); zero-persistence pairs are dropped. One essential
// birth per connected component of the graph, at that component's minimum.
PersistenceDiagram sublevel_diagram_0(const GridGraph& graph, const ScalarField& f);

// #{finite points with birth <= s and death > t} + #{essential births <= s}.
long rank_from_diagram(const PersistenceDiagram& dgm, double s, double t);

// Independent route: components of the sublevel subgraph <f <= t> that
// contain at least one vertex of <f <= s>, by explicit labelling.
long rank_oracle_1d(const GridGraph& graph, const ScalarField& f, double s, double t);

// Components of the subgraph induced by {x : f_i(x) <= upper_i for all i}
// containing a vertex that also satisfies the lower bounds.
long rank_oracle_multi(const GridGraph& graph, const MultiField& fields, const RankQuery& query);

// Same count with vertices restricted to the foreground of the grid.
long rank_restricted_0(const BinaryGrid& grid, const ScalarField& f, double s, double t);

// {"finite": [[b,d],...], "essential": [b,...]} with 17-significant-digit numbers.
std::string diagram_to_json(const PersistenceDiagram& dgm);
PersistenceDiagram diagram_from_json(const std::string& text);

// birth,death rows; death printed as "inf" for essential births.
std::string diagram_to_csv(const PersistenceDiagram& dgm);

}  // namespace pertop
