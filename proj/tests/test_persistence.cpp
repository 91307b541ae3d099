#include <doctest.h>

#include "oracles.hpp"
#include "pertop/harness.hpp"
#include "pertop/persistence.hpp"

using namespace pertop;

namespace {

// Vertices that open a new component: no 4-neighbour precedes them in the
// (value, index) filtration order.
long count_component_births(const GridGraph& graph, const ScalarField& f) {
    long births = 0;
    for (int v = 0; v < int(graph.vertex_count()); ++v) {
        bool has_earlier = false;
        graph.for_each_neighbor(v, [&](int u) {
            const double fu = f[std::size_t(u)];
            const double fv = f[std::size_t(v)];
            if (fu < fv || (fu == fv && u < v)) has_earlier = true;
        });
        births += has_earlier ? 0 : 1;
    }
    return births;
}

}  // namespace

TEST_SUITE_BEGIN("persistence");

TEST_CASE("diagram of a three-vertex path") {
    const GridGraph graph(3, 1);
    const ScalarField f(3, 1, std::vector<double>{0.0, 1.0, 0.0});
    const PersistenceDiagram dgm = sublevel_diagram_0(graph, f);
    REQUIRE(dgm.finite.size() == 1);
    CHECK(dgm.finite[0] == DiagramPoint{0.0, 1.0});
    REQUIRE(dgm.essential.size() == 1);
    CHECK(dgm.essential[0] == 0.0);
}

TEST_CASE("constant field has a single essential class") {
    const GridGraph graph(4, 3);
    const ScalarField f(4, 3, 2.5);
    const PersistenceDiagram dgm = sublevel_diagram_0(graph, f);
    CHECK(dgm.finite.empty());
    REQUIRE(dgm.essential.size() == 1);
    CHECK(dgm.essential[0] == 2.5);
}

TEST_CASE("monotone staircase never creates a second component") {
    const GridGraph graph(4, 1);
    const ScalarField f(4, 1, std::vector<double>{3.0, 2.0, 1.0, 0.0});
    const PersistenceDiagram dgm = sublevel_diagram_0(graph, f);
    CHECK(dgm.finite.empty());
    REQUIRE(dgm.essential.size() == 1);
    CHECK(dgm.essential[0] == 0.0);
}

TEST_CASE("rank_from_diagram counting") {
    PersistenceDiagram dgm;
    dgm.finite = {{0.0, 1.0}};
    dgm.essential = {0.0};
    CHECK(rank_from_diagram(dgm, 0.0, 0.5) == 2);
    CHECK(rank_from_diagram(dgm, 0.0, 1.5) == 1);
    CHECK(rank_from_diagram(dgm, -1.0, 0.5) == 0);
    CHECK_THROWS_AS(rank_from_diagram(dgm, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("rank oracle basics") {
    const GridGraph graph(4, 4);
    const ScalarField constant(4, 4, 1.0);
    CHECK(rank_oracle_1d(graph, constant, 1.0, 2.0) == 1);
    CHECK(rank_oracle_1d(graph, constant, 0.0, 0.5) == 0);
    CHECK_THROWS_AS(rank_oracle_1d(graph, constant, 2.0, 1.0), std::invalid_argument);
}

TEST_CASE("diagram ranks equal the labelling oracle") {
    SplitMix64 rng(201);
    const GridGraph graph(8, 8);
    for (int trial = 0; trial < 200; ++trial) {
        const ScalarField f = oracles::random_field(rng, 8, 8, 0.0, 1.0);
        const PersistenceDiagram dgm = sublevel_diagram_0(graph, f);
        double s = rng.next_unit();
        double t = rng.next_unit();
        if (s > t) std::swap(s, t);
        if (s == t) t += 0.1;
        REQUIRE(rank_from_diagram(dgm, s, t) == rank_oracle_1d(graph, f, s, t));
    }
}

TEST_CASE("rank is monotone in the query window") {
    SplitMix64 rng(202);
    const GridGraph graph(8, 8);
    for (int trial = 0; trial < 30; ++trial) {
        const ScalarField f = oracles::random_field(rng, 8, 8, 0.0, 1.0);
        const double s = 0.2 + 0.3 * rng.next_unit();
        const double t = 0.6 + 0.3 * rng.next_unit();
        CHECK(rank_oracle_1d(graph, f, s, t) >= rank_oracle_1d(graph, f, s - 0.1, t));
        CHECK(rank_oracle_1d(graph, f, s, t) >= rank_oracle_1d(graph, f, s, t + 0.1));
    }
}

TEST_CASE("finite multiplicity conservation") {
    SplitMix64 rng(203);
    const GridGraph graph(9, 9);
    for (int trial = 0; trial < 30; ++trial) {
        const ScalarField f = oracles::random_field(rng, 9, 9, 0.0, 1.0);
        const PersistenceDiagram dgm = sublevel_diagram_0(graph, f);
        const long births = count_component_births(graph, f);
        CHECK(long(dgm.finite.size()) == births - long(dgm.essential.size()));
    }
}

TEST_CASE("multiparameter rank oracle") {
    SplitMix64 rng(204);
    const GridGraph graph(8, 8);

    SUBCASE("k = 1 specializes to the scalar oracle") {
        for (int trial = 0; trial < 50; ++trial) {
            const ScalarField f = oracles::random_field(rng, 8, 8, 0.0, 1.0);
            double s = rng.next_unit();
            double t = s + 0.1 + rng.next_unit();
            RankQuery q{{s}, {t}};
            CHECK(rank_oracle_multi(graph, stack({f}), q) == rank_oracle_1d(graph, f, s, t));
        }
    }

    SUBCASE("below the componentwise minimum the rank vanishes") {
        const ScalarField f = oracles::random_field(rng, 8, 8, 1.0, 2.0);
        const ScalarField g = oracles::random_field(rng, 8, 8, 1.0, 2.0);
        RankQuery q{{-2.0, -2.0}, {0.0, 0.0}};
        CHECK(rank_oracle_multi(graph, stack({f, g}), q) == 0);
    }

    SUBCASE("zero distance slice recovers the restricted rank") {
        for (int trial = 0; trial < 20; ++trial) {
            const BinaryGrid grid = oracles::random_grid(rng, 8, 8, 0.5);
            const ScalarField phi = oracles::random_field(rng, 8, 8, 0.0, 1.0);
            const double u = 0.25 + 0.2 * rng.next_unit();
            const double v = u + 0.2 + 0.2 * rng.next_unit();
            RankQuery q{{0.0, u}, {0.5, v}};
            const MultiField combined = stack({distance_transform(grid), phi});
            CHECK(rank_oracle_multi(graph, combined, q) == rank_restricted_0(grid, phi, u, v));
        }
    }

    SUBCASE("errors") {
        const ScalarField f(8, 8, 0.0);
        CHECK_THROWS_AS(rank_oracle_multi(graph, stack({f}), RankQuery{{0.0, 0.0}, {1.0, 1.0}}),
                        std::invalid_argument);
        CHECK_THROWS_AS(rank_oracle_multi(graph, stack({f}), RankQuery{{1.0}, {1.0}}),
                        std::invalid_argument);
    }
}

TEST_CASE("diagram serialization") {
    PersistenceDiagram dgm;
    dgm.finite = {{0.125, 2.75}, {1.0, 4.0}};
    dgm.essential = {-3.5, 0.125};

    const std::string json = diagram_to_json(dgm);
    CHECK(diagram_from_json(json) == dgm);

    const std::string csv = diagram_to_csv(dgm);
    CHECK(csv.find("birth,death\n") == 0);
    CHECK(csv.find(",inf\n") != std::string::npos);

    CHECK_THROWS_AS(diagram_from_json("{\"finite\": [[1, 0]], \"essential\": []}"),
                    std::invalid_argument);
}

TEST_SUITE_END();
