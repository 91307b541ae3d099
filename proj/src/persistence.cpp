#include "pertop/persistence.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

namespace pertop {

namespace {

void require_extent(const GridGraph& graph, const ScalarField& f) {
    if (graph.width() != f.width() || graph.height() != f.height())
        throw std::invalid_argument("extent mismatch");
}

void require_window(double s, double t) {
    if (!(s < t)) throw std::invalid_argument("rank query needs s < t");
}

int find_root(std::vector<int>& parent, int v) {
    while (parent[std::size_t(v)] != v) {
        parent[std::size_t(v)] = parent[std::size_t(parent[std::size_t(v)])];
        v = parent[std::size_t(v)];
    }
    return v;
}

}  // namespace

void validate(const RankQuery& query) {
    if (query.lower.empty() || query.lower.size() != query.upper.size())
        throw std::invalid_argument("rank query dimension mismatch");
    for (std::size_t i = 0; i < query.lower.size(); ++i)
        if (!(query.lower[i] < query.upper[i]))
            throw std::invalid_argument("rank query must be strictly increasing component-wise");
}

PersistenceDiagram sublevel_diagram_0(const GridGraph& graph, const ScalarField& f) {
    require_extent(graph, f);
    const int n = int(graph.vertex_count());

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const double fa = f[std::size_t(a)];
        const double fb = f[std::size_t(b)];
        return fa < fb || (fa == fb && a < b);
    });

    std::vector<int> parent(std::size_t(n), -1);  // -1: not yet in the filtration
    std::vector<double> birth(static_cast<std::size_t>(n));
    std::vector<int> birth_rank(static_cast<std::size_t>(n));

    PersistenceDiagram dgm;
    for (int pos = 0; pos < n; ++pos) {
        const int v = order[std::size_t(pos)];
        const double level = f[std::size_t(v)];
        parent[std::size_t(v)] = v;
        birth[std::size_t(v)] = level;
        birth_rank[std::size_t(v)] = pos;

        graph.for_each_neighbor(v, [&](int u) {
            if (parent[std::size_t(u)] < 0) return;
            int ru = find_root(parent, u);
            int rv = find_root(parent, v);
            if (ru == rv) return;
            // Elder rule: smaller (birth value, birth order) survives.
            if (birth[std::size_t(ru)] > birth[std::size_t(rv)] ||
                (birth[std::size_t(ru)] == birth[std::size_t(rv)] &&
                 birth_rank[std::size_t(ru)] > birth_rank[std::size_t(rv)]))
                std::swap(ru, rv);
            if (birth[std::size_t(rv)] < level)
                dgm.finite.push_back({birth[std::size_t(rv)], level});
            parent[std::size_t(rv)] = ru;
        });
    }

    for (int v = 0; v < n; ++v)
        if (parent[std::size_t(v)] == v) dgm.essential.push_back(birth[std::size_t(v)]);

    std::sort(dgm.finite.begin(), dgm.finite.end(), [](const DiagramPoint& a, const DiagramPoint& b) {
        return a.birth < b.birth || (a.birth == b.birth && a.death < b.death);
    });
    std::sort(dgm.essential.begin(), dgm.essential.end());
    return dgm;
}

long rank_from_diagram(const PersistenceDiagram& dgm, double s, double t) {
    require_window(s, t);
    long rank = 0;
    for (const DiagramPoint& p : dgm.finite) rank += (p.birth <= s && p.death > t) ? 1 : 0;
    for (double b : dgm.essential) rank += (b <= s) ? 1 : 0;
    return rank;
}

namespace {

// Components of the subgraph induced by `alive`; returns how many contain a
// seed vertex.
long seeded_component_count(const GridGraph& graph, const std::vector<std::uint8_t>& alive,
                            const std::vector<std::uint8_t>& seed) {
    const int n = int(graph.vertex_count());
    std::vector<std::uint8_t> visited(std::size_t(n), 0);
    std::vector<int> stack;
    long count = 0;
    for (int v = 0; v < n; ++v) {
        if (!alive[std::size_t(v)] || visited[std::size_t(v)]) continue;
        bool touched = false;
        stack.push_back(v);
        visited[std::size_t(v)] = 1;
        while (!stack.empty()) {
            const int cur = stack.back();
            stack.pop_back();
            touched = touched || seed[std::size_t(cur)];
            graph.for_each_neighbor(cur, [&](int u) {
                if (alive[std::size_t(u)] && !visited[std::size_t(u)]) {
                    visited[std::size_t(u)] = 1;
                    stack.push_back(u);
                }
            });
        }
        count += touched ? 1 : 0;
    }
    return count;
}

}  // namespace

long rank_oracle_1d(const GridGraph& graph, const ScalarField& f, double s, double t) {
    require_extent(graph, f);
    require_window(s, t);
    const std::size_t n = graph.vertex_count();
    std::vector<std::uint8_t> alive(n), seed(n);
    for (std::size_t v = 0; v < n; ++v) {
        alive[v] = f[v] <= t ? 1 : 0;
        seed[v] = f[v] <= s ? 1 : 0;
    }
    return seeded_component_count(graph, alive, seed);
}

long rank_oracle_multi(const GridGraph& graph, const MultiField& fields, const RankQuery& query) {
    validate(query);
    if (int(query.lower.size()) != fields.arity())
        throw std::invalid_argument("rank query dimension mismatch");
    if (graph.width() != fields.width() || graph.height() != fields.height())
        throw std::invalid_argument("extent mismatch");
    const std::size_t n = graph.vertex_count();
    std::vector<std::uint8_t> alive(n, 1), seed(n, 1);
    for (int i = 0; i < fields.arity(); ++i) {
        const ScalarField& f = fields.component(i);
        for (std::size_t v = 0; v < n; ++v) {
            alive[v] &= f[v] <= query.upper[std::size_t(i)] ? 1 : 0;
            seed[v] &= f[v] <= query.lower[std::size_t(i)] ? 1 : 0;
        }
    }
    return seeded_component_count(graph, alive, seed);
}

long rank_restricted_0(const BinaryGrid& grid, const ScalarField& f, double s, double t) {
    require_window(s, t);
    if (grid.width() != f.width() || grid.height() != f.height())
        throw std::invalid_argument("extent mismatch");
    const GridGraph graph(grid.width(), grid.height());
    const std::size_t n = graph.vertex_count();
    std::vector<std::uint8_t> alive(n), seed(n);
    for (std::size_t v = 0; v < n; ++v) {
        alive[v] = (grid.mask()[v] && f[v] <= t) ? 1 : 0;
        seed[v] = (grid.mask()[v] && f[v] <= s) ? 1 : 0;
    }
    return seeded_component_count(graph, alive, seed);
}

std::string diagram_to_json(const PersistenceDiagram& dgm) {
    std::string out = "{\"finite\": [";
    for (std::size_t i = 0; i < dgm.finite.size(); ++i) {
        if (i) out += ", ";
        out += '[';
        out += format_real(dgm.finite[i].birth);
        out += ", ";
        out += format_real(dgm.finite[i].death);
        out += ']';
    }
    out += "], \"essential\": [";
    for (std::size_t i = 0; i < dgm.essential.size(); ++i) {
        if (i) out += ", ";
        out += format_real(dgm.essential[i]);
    }
    out += "]}";
    return out;
}

PersistenceDiagram diagram_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    PersistenceDiagram dgm;
    for (const auto& pair : j.at("finite")) {
        if (!pair.is_array() || pair.size() != 2)
            throw std::invalid_argument("finite entries must be [birth, death] pairs");
        DiagramPoint p{pair[0].get<double>(), pair[1].get<double>()};
        if (!(p.birth < p.death))
            throw std::invalid_argument("finite points need birth < death");
        dgm.finite.push_back(p);
    }
    for (const auto& b : j.at("essential")) dgm.essential.push_back(b.get<double>());
    std::sort(dgm.finite.begin(), dgm.finite.end(), [](const DiagramPoint& a, const DiagramPoint& b) {
        return a.birth < b.birth || (a.birth == b.birth && a.death < b.death);
    });
    std::sort(dgm.essential.begin(), dgm.essential.end());
    return dgm;
}

std::string diagram_to_csv(const PersistenceDiagram& dgm) {
    std::string out = "birth,death\n";
    for (const DiagramPoint& p : dgm.finite) {
        out += format_real(p.birth);
        out += ',';
        out += format_real(p.death);
        out += '\n';
    }
    for (double b : dgm.essential) {
        out += format_real(b);
        out += ",inf\n";
    }
    return out;
}

}  // namespace pertop
