#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "pertop/encodings.hpp"
#include "pertop/foliation.hpp"
#include "pertop/harness.hpp"

using namespace pertop;

namespace {

const double kInvRoot2 = 1.0 / std::sqrt(2.0);

AdmissiblePair diagonal_pair() { return {{kInvRoot2, kInvRoot2}, {0.0, 0.0}}; }

bool near(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

}  // namespace

TEST_SUITE_BEGIN("foliation");

TEST_CASE("admissible pair validation") {
    CHECK_NOTHROW(validate(diagonal_pair()));
    CHECK_NOTHROW(validate(AdmissiblePair{{1.0}, {0.0}}));
    CHECK_THROWS_AS(validate(AdmissiblePair{{1.0, 0.0}, {0.0, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(validate(AdmissiblePair{{0.5, 0.5}, {0.0, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(validate(AdmissiblePair{{kInvRoot2, kInvRoot2}, {1.0, 0.0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(validate(AdmissiblePair{{kInvRoot2, kInvRoot2}, {1.0}}),
                    std::invalid_argument);
}

TEST_CASE("reduce") {
    SplitMix64 rng(301);
    const ScalarField f = oracles::random_field(rng, 6, 5, -2.0, 2.0);

    SUBCASE("k = 1 identity leaf") {
        const ScalarField r = reduce(stack({f}), AdmissiblePair{{1.0}, {0.0}});
        CHECK(r == f);
    }

    SUBCASE("diagonal leaf on duplicated components rescales") {
        const ScalarField r = reduce(stack({f, f}), diagonal_pair());
        for (std::size_t i = 0; i < f.size(); ++i)
            CHECK(near(r[i], std::sqrt(2.0) * f[i], 1e-12));
    }

    SUBCASE("dimension mismatch") {
        CHECK_THROWS_AS(reduce(stack({f}), diagonal_pair()), std::invalid_argument);
    }
}

TEST_CASE("leaf_point_to_query") {
    SUBCASE("identity leaf") {
        const RankQuery q = leaf_point_to_query({AdmissiblePair{{1.0}, {0.0}}, 0.0, 1.0});
        CHECK(q.lower == std::vector<double>{0.0});
        CHECK(q.upper == std::vector<double>{1.0});
    }

    SUBCASE("shifted diagonal leaf") {
        const RankQuery q = leaf_point_to_query(
            {AdmissiblePair{{kInvRoot2, kInvRoot2}, {1.0, -1.0}}, 0.0, std::sqrt(2.0)});
        CHECK(near(q.lower[0], 1.0, 1e-12));
        CHECK(near(q.lower[1], -1.0, 1e-12));
        CHECK(near(q.upper[0], 2.0, 1e-12));
        CHECK(near(q.upper[1], 0.0, 1e-12));
    }

    SUBCASE("degenerate window rejected") {
        CHECK_THROWS_AS(leaf_point_to_query({AdmissiblePair{{1.0}, {0.0}}, 1.0, 1.0}),
                        std::invalid_argument);
    }
}

TEST_CASE("leaf_params") {
    SUBCASE("half-plane through ((0,-100),(3,-80))") {
        const LeafPoint p = leaf_params(0.0, -100.0, 3.0, -80.0);
        CHECK(near(p.pair.direction[0], 0.1483, 1e-3));
        CHECK(near(p.pair.direction[1], 0.9889, 1e-3));
        CHECK(near(p.pair.offset[0], 13.0434, 1e-3));
        CHECK(near(p.pair.offset[1], -13.0434, 1e-3));
        CHECK_NOTHROW(validate(p.pair));
        CHECK(leaf_boundary_proximate(0.0));
    }

    SUBCASE("symmetric diagonal case") {
        const LeafPoint p = leaf_params(0.0, 0.0, 1.0, 1.0);
        CHECK(near(p.pair.direction[0], kInvRoot2, 1e-12));
        CHECK(near(p.pair.direction[1], kInvRoot2, 1e-12));
        CHECK(near(p.pair.offset[0], 0.0, 1e-12));
        CHECK(near(p.pair.offset[1], 0.0, 1e-12));
        CHECK(near(p.s, 0.0, 1e-12));
        CHECK(near(p.t, std::sqrt(2.0), 1e-12));
        CHECK_FALSE(leaf_boundary_proximate(0.5));
    }

    SUBCASE("known slice coordinates within print precision") {
        struct Row {
            double alpha, beta, s, t;
        };
        // 6-digit reference values reproduce to about 1e-2.
        const Row rows[] = {
            {0.5, 24.0, -70.5866, -39.7272},
            {0.5, 16.0, -70.9216, -45.6179},
            {0.5, 8.0, -77.2843, -55.9262},
            {0.5, 1.0, -97.1120, -77.1040},
        };
        for (const Row& row : rows) {
            const LeafPoint p = leaf_params(row.alpha, -100.0, row.beta, -80.0);
            CHECK(near(p.s, row.s, 1e-2));
            CHECK(near(p.t, row.t, 1e-2));
        }
    }

    SUBCASE("rejects points outside the strict quadrant") {
        CHECK_THROWS_AS(leaf_params(1.0, 0.0, 1.0, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(leaf_params(0.0, 1.0, 1.0, 1.0), std::invalid_argument);
    }
}

TEST_CASE("leaf_params and leaf_point_to_query are mutually inverse") {
    SplitMix64 rng(302);
    for (int trial = 0; trial < 200; ++trial) {
        const double alpha = -5.0 + 10.0 * rng.next_unit();
        const double beta = alpha + 0.05 + 10.0 * rng.next_unit();
        const double u = -100.0 + 200.0 * rng.next_unit();
        const double v = u + 0.05 + 50.0 * rng.next_unit();

        const LeafPoint p = leaf_params(alpha, u, beta, v);
        CHECK_NOTHROW(validate(p.pair));
        const RankQuery q = leaf_point_to_query(p);
        CHECK(near(q.lower[0], alpha, 1e-9));
        CHECK(near(q.lower[1], u, 1e-9));
        CHECK(near(q.upper[0], beta, 1e-9));
        CHECK(near(q.upper[1], v, 1e-9));

        const LeafPoint back = leaf_params(q.lower[0], q.lower[1], q.upper[0], q.upper[1]);
        CHECK(near(back.pair.direction[0], p.pair.direction[0], 1e-9));
        CHECK(near(back.pair.offset[0], p.pair.offset[0], 1e-9));
        CHECK(near(back.s, p.s, 1e-9));
        CHECK(near(back.t, p.t, 1e-9));
    }
}

TEST_CASE("sample_admissible_2") {
    SUBCASE("single sample sits at the midpoints") {
        const std::vector<AdmissiblePair> leaves = sample_admissible_2(1, 1, 4.0);
        REQUIRE(leaves.size() == 1);
        CHECK(near(leaves[0].direction[0], kInvRoot2, 1e-12));
        CHECK(near(leaves[0].direction[1], kInvRoot2, 1e-12));
        CHECK(leaves[0].offset[0] == 0.0);
    }

    SUBCASE("cartesian product size and validity") {
        const std::vector<AdmissiblePair> leaves = sample_admissible_2(2, 3, 7.5);
        CHECK(leaves.size() == 6);
        for (const AdmissiblePair& leaf : leaves) CHECK_NOTHROW(validate(leaf));
    }

    SUBCASE("invalid arguments") {
        CHECK_THROWS_AS(sample_admissible_2(0, 1, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(sample_admissible_2(1, 1, 0.0), std::invalid_argument);
    }
}

TEST_CASE("reduction: leaf ranks agree between the two routes") {
    SplitMix64 rng(303);
    const GridGraph graph(8, 8);
    for (int trial = 0; trial < 50; ++trial) {
        const MultiField fields = stack({oracles::random_field(rng, 8, 8, -1.0, 1.0),
                                         oracles::random_field(rng, 8, 8, -1.0, 1.0)});
        const std::vector<AdmissiblePair> leaves =
            sample_admissible_2(1 + int(rng.next() % 6), 1 + int(rng.next() % 6), 1.5);
        const AdmissiblePair& pair = leaves[rng.next() % leaves.size()];
        const double s = -2.0 + 4.0 * rng.next_unit();
        const double t = s + 0.05 + 2.0 * rng.next_unit();

        const long via_box = rank_oracle_multi(graph, fields, leaf_point_to_query({pair, s, t}));
        const long via_reduced = rank_oracle_1d(graph, reduce(fields, pair), s, t);
        REQUIRE(via_box == via_reduced);
    }
}

TEST_CASE("recover_rank on a synthetic star") {
    const BinaryGrid star = make_star(8, 20, 3, 64, 64);
    const auto [cx, cy] = centroid(star);
    const ScalarField phi = radial_field(64, 64, cx, cy);
    const double u = -24.0;
    const double v = -10.0;

    const long direct = rank_restricted_0(star, phi, u, v);
    CHECK(direct == 8);

    SUBCASE("small slice recovers the restricted rank") {
        CHECK(recover_rank(star, phi, u, v, 0.25, 0.5) == direct);
        CHECK(recover_rank(star, phi, u, v, 0.125, 0.25) == direct);
    }

    SUBCASE("wide slice merges the arms") {
        CHECK(recover_rank(star, phi, u, v, 6.0, 24.0) < direct);
    }

    SUBCASE("window below the measuring range is empty") {
        const double far = phi.min_value() - 10.0;
        CHECK(recover_rank(star, phi, far, far + 1.0, 0.25, 0.5) == 0);
    }

    SUBCASE("bad arguments") {
        CHECK_THROWS_AS(recover_rank(star, phi, u, v, -1.0, 0.5), std::invalid_argument);
        CHECK_THROWS_AS(recover_rank(star, phi, u, v, 0.5, 0.5), std::invalid_argument);
    }
}

TEST_CASE("recovered rank plateaus for shrinking slices") {
    const BinaryGrid star = make_star(5, 14, 3, 56, 56);
    const auto [cx, cy] = centroid(star);
    const ScalarField phi = radial_field(56, 56, cx, cy);
    const double u = -18.0;
    const double v = -9.0;
    const long direct = rank_restricted_0(star, phi, u, v);
    CHECK(direct == 5);

    int plateau = 0;
    const std::vector<std::pair<double, double>> schedule = {
        {2, 8}, {1, 4}, {0.5, 2}, {0.25, 1}, {0.125, 0.5}};
    for (const auto& [alpha, beta] : schedule) {
        if (recover_rank(star, phi, u, v, alpha, beta) == direct)
            ++plateau;
        else
            plateau = 0;
    }
    CHECK(plateau >= 3);
}

TEST_CASE("leaves serialize to JSON") {
    const std::string json = leaves_to_json(sample_admissible_2(2, 2, 1.0));
    CHECK(json.front() == '[');
    CHECK(json.find("\"l\"") != std::string::npos);
    CHECK(json.find("\"b\"") != std::string::npos);
}

TEST_SUITE_END();
