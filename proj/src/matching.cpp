#include "pertop/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pertop {

ExtendedCost ExtendedCost::infinite() {
    return ExtendedCost{std::numeric_limits<double>::infinity()};
}

bool ExtendedCost::is_infinite() const { return std::isinf(value); }

namespace {

double pair_cost(const DiagramPoint& p, const DiagramPoint& q) {
    const double direct = std::max(std::fabs(p.birth - q.birth), std::fabs(p.death - q.death));
    const double both_deleted = std::max(p.death - p.birth, q.death - q.birth) / 2.0;
    return std::min(direct, both_deleted);
}

// Maximum bipartite matching (Hopcroft-Karp); true iff every left vertex is
// matched. Bails out as soon as a phase fails to grow the matching.
class LeftSaturator {
public:
    LeftSaturator(const std::vector<std::vector<int>>& adj, int n_right)
        : adj_(adj),
          match_left_(adj.size(), -1),
          match_right_(std::size_t(n_right), -1),
          layer_(adj.size()) {}

    bool saturates() {
        for (const auto& edges : adj_)
            if (edges.empty()) return false;
        std::size_t matched = 0;
        while (matched < adj_.size()) {
            if (!bfs()) return false;
            std::size_t grown = 0;
            for (int v = 0; v < int(adj_.size()); ++v)
                if (match_left_[std::size_t(v)] < 0 && dfs(v)) ++grown;
            if (grown == 0) return false;
            matched += grown;
        }
        return true;
    }

private:
    bool bfs() {
        queue_.clear();
        for (int v = 0; v < int(adj_.size()); ++v) {
            if (match_left_[std::size_t(v)] < 0) {
                layer_[std::size_t(v)] = 0;
                queue_.push_back(v);
            } else {
                layer_[std::size_t(v)] = -1;
            }
        }
        bool reachable_free = false;
        for (std::size_t head = 0; head < queue_.size(); ++head) {
            const int v = queue_[head];
            for (int u : adj_[std::size_t(v)]) {
                const int w = match_right_[std::size_t(u)];
                if (w < 0) {
                    reachable_free = true;
                } else if (layer_[std::size_t(w)] < 0) {
                    layer_[std::size_t(w)] = layer_[std::size_t(v)] + 1;
                    queue_.push_back(w);
                }
            }
        }
        return reachable_free;
    }

    bool dfs(int v) {
        for (int u : adj_[std::size_t(v)]) {
            const int w = match_right_[std::size_t(u)];
            if (w < 0 || (layer_[std::size_t(w)] == layer_[std::size_t(v)] + 1 && dfs(w))) {
                match_left_[std::size_t(v)] = u;
                match_right_[std::size_t(u)] = v;
                return true;
            }
        }
        layer_[std::size_t(v)] = -1;
        return false;
    }

    const std::vector<std::vector<int>>& adj_;
    std::vector<int> match_left_;
    std::vector<int> match_right_;
    std::vector<int> layer_;
    std::vector<int> queue_;
};

struct FiniteProblem {
    int n_a = 0;
    int n_b = 0;
    std::vector<double> costs;  // n_a x n_b, row-major
    std::vector<double> delete_a;
    std::vector<double> delete_b;

    double cost(int i, int j) const { return costs[std::size_t(i) * n_b + j]; }
};

// A candidate threshold is feasible iff the forced points on each side (those
// whose deletion costs more than c) can be saturated through threshold edges.
// Covering both sides splits into two saturation tests (Mendelsohn-Dulmage);
// leftover virtual diagonal partners always pair off among themselves.
bool feasible(const FiniteProblem& prob, double c) {
    std::vector<std::vector<int>> adj;
    adj.reserve(std::size_t(std::max(prob.n_a, prob.n_b)));

    adj.clear();
    for (int i = 0; i < prob.n_a; ++i) {
        if (prob.delete_a[std::size_t(i)] <= c) continue;
        auto& edges = adj.emplace_back();
        for (int j = 0; j < prob.n_b; ++j)
            if (prob.cost(i, j) <= c) edges.push_back(j);
    }
    if (!adj.empty() && !LeftSaturator(adj, prob.n_b).saturates()) return false;

    adj.clear();
    for (int j = 0; j < prob.n_b; ++j) {
        if (prob.delete_b[std::size_t(j)] <= c) continue;
        auto& edges = adj.emplace_back();
        for (int i = 0; i < prob.n_a; ++i)
            if (prob.cost(i, j) <= c) edges.push_back(i);
    }
    if (!adj.empty() && !LeftSaturator(adj, prob.n_a).saturates()) return false;
    return true;
}

double finite_bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b) {
    FiniteProblem prob;
    prob.n_a = int(a.finite.size());
    prob.n_b = int(b.finite.size());
    if (prob.n_a == 0 && prob.n_b == 0) return 0.0;

    prob.delete_a.reserve(std::size_t(prob.n_a));
    for (const DiagramPoint& p : a.finite) prob.delete_a.push_back((p.death - p.birth) / 2.0);
    prob.delete_b.reserve(std::size_t(prob.n_b));
    for (const DiagramPoint& q : b.finite) prob.delete_b.push_back((q.death - q.birth) / 2.0);

    double everything_deleted = 0.0;
    for (double d : prob.delete_a) everything_deleted = std::max(everything_deleted, d);
    for (double d : prob.delete_b) everything_deleted = std::max(everything_deleted, d);

    prob.costs.resize(std::size_t(prob.n_a) * prob.n_b);
    std::vector<double> candidates;
    candidates.reserve(prob.costs.size() + prob.delete_a.size() + prob.delete_b.size() + 1);
    candidates.push_back(0.0);
    candidates.insert(candidates.end(), prob.delete_a.begin(), prob.delete_a.end());
    candidates.insert(candidates.end(), prob.delete_b.begin(), prob.delete_b.end());
    for (int i = 0; i < prob.n_a; ++i)
        for (int j = 0; j < prob.n_b; ++j) {
            const double c = pair_cost(a.finite[std::size_t(i)], b.finite[std::size_t(j)]);
            prob.costs[std::size_t(i) * prob.n_b + j] = c;
            if (c < everything_deleted) candidates.push_back(c);
        }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    // Smallest feasible candidate; deleting everything is always feasible.
    std::size_t lo = 0;
    std::size_t hi = std::size_t(std::lower_bound(candidates.begin(), candidates.end(),
                                                  everything_deleted) -
                                 candidates.begin());
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (feasible(prob, candidates[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    return candidates[lo];
}

}  // namespace

ExtendedCost point_cost(const DiagramPoint& p, const DiagramPoint& q) {
    if (!(p.birth < p.death) || !(q.birth < q.death))
        throw std::invalid_argument("diagram points need birth < death");
    return ExtendedCost{pair_cost(p, q)};
}

ExtendedCost dmatch_1d(const PersistenceDiagram& a, const PersistenceDiagram& b) {
    if (a.essential.size() != b.essential.size()) return ExtendedCost::infinite();

    double essential_cost = 0.0;
    if (!a.essential.empty()) {
        std::vector<double> ea(a.essential);
        std::vector<double> eb(b.essential);
        std::sort(ea.begin(), ea.end());
        std::sort(eb.begin(), eb.end());
        for (std::size_t i = 0; i < ea.size(); ++i)
            essential_cost = std::max(essential_cost, std::fabs(ea[i] - eb[i]));
    }
    return ExtendedCost{std::max(essential_cost, finite_bottleneck(a, b))};
}

double dmatch_multi_lower_bound(const GridGraph& graph, const MultiField& f, const MultiField& g,
                                const std::vector<AdmissiblePair>& leaves) {
    if (leaves.empty()) throw std::invalid_argument("leaf list must not be empty");
    if (f.arity() != g.arity()) throw std::invalid_argument("component count mismatch");
    if (f.width() != g.width() || f.height() != g.height())
        throw std::invalid_argument("extent mismatch");
    double best = 0.0;
    for (const AdmissiblePair& leaf : leaves) {
        const PersistenceDiagram da = sublevel_diagram_0(graph, reduce(f, leaf));
        const PersistenceDiagram db = sublevel_diagram_0(graph, reduce(g, leaf));
        const ExtendedCost d = dmatch_1d(da, db);
        if (d.is_infinite()) return std::numeric_limits<double>::infinity();
        best = std::max(best, leaf.min_direction() * d.value);
    }
    return best;
}

PersistenceDiagram scale_diagram(const PersistenceDiagram& dgm, double mu) {
    if (!(mu > 0.0)) throw std::invalid_argument("scale factor must be positive");
    PersistenceDiagram out;
    out.finite.reserve(dgm.finite.size());
    for (const DiagramPoint& p : dgm.finite) out.finite.push_back({mu * p.birth, mu * p.death});
    out.essential.reserve(dgm.essential.size());
    for (double b : dgm.essential) out.essential.push_back(mu * b);
    return out;
}

}  // namespace pertop
