#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "pertop/encodings.hpp"
#include "pertop/grid.hpp"
#include "pertop/harness.hpp"

using namespace pertop;

namespace {

std::vector<std::uint8_t> bytes_of(const std::string& s) {
    return std::vector<std::uint8_t>(s.begin(), s.end());
}

}  // namespace

TEST_SUITE_BEGIN("grid");

TEST_CASE("grid invariants") {
    CHECK_THROWS_AS(BinaryGrid(0, 3), std::invalid_argument);
    CHECK_THROWS_AS(BinaryGrid(3, 3, std::vector<std::uint8_t>(4, 0)), std::invalid_argument);
    CHECK_THROWS_AS(BinaryGrid::from_pixels(2, 2, {{2, 0}}), std::invalid_argument);
    const BinaryGrid g = BinaryGrid::from_pixels(3, 2, {{0, 0}, {2, 1}});
    CHECK(g.foreground_count() == 2);
    CHECK(g.foreground(2, 1));
    CHECK_FALSE(g.foreground(1, 0));
}

TEST_CASE("load_pgm textual") {
    const BinaryGrid black = load_pgm(bytes_of("P2\n1 1\n255\n0\n"), 128);
    CHECK(black.foreground_count() == 1);
    CHECK(black.foreground(0, 0));

    const BinaryGrid white = load_pgm(bytes_of("P2\n1 1\n255\n255\n"), 128);
    CHECK(white.foreground_count() == 0);

    const BinaryGrid commented =
        load_pgm(bytes_of("P2 # magic\n# full header comment\n2 1 # extent\n255\n0 255\n"), 128);
    CHECK(commented.foreground(0, 0));
    CHECK_FALSE(commented.foreground(1, 0));
}

TEST_CASE("load_pgm binary") {
    std::string header = "P5\n2 2\n255\n";
    std::vector<std::uint8_t> data = bytes_of(header);
    const std::uint8_t payload[] = {0, 255, 255, 0};
    data.insert(data.end(), payload, payload + 4);
    const BinaryGrid g = load_pgm(data, 128);
    CHECK(g.foreground(0, 0));
    CHECK(g.foreground(1, 1));
    CHECK_FALSE(g.foreground(1, 0));
    CHECK_FALSE(g.foreground(0, 1));
}

TEST_CASE("load_pgm errors carry byte offsets") {
    CHECK_THROWS_AS(load_pgm(bytes_of("P6\n1 1\n255\n"), 128), PgmError);
    try {
        load_pgm(bytes_of("P6\n1 1\n255\n"), 128);
    } catch (const PgmError& e) {
        CHECK(e.offset() == 0);
    }
    CHECK_THROWS_AS(load_pgm(bytes_of("P2\nx\n"), 128), PgmError);
    CHECK_THROWS_AS(load_pgm(bytes_of("P2\n1 1\n300\n0\n"), 128), PgmError);
    CHECK_THROWS_AS(load_pgm(bytes_of("P2\n2 2\n255\n0 0 0\n"), 128), PgmError);
    CHECK_THROWS_AS(load_pgm(bytes_of("P2\n1 1\n255\n0 0\n"), 128), PgmError);
    CHECK_THROWS_AS(load_pgm(bytes_of("P5\n2 2\n255\nab"), 128), PgmError);
    CHECK_THROWS_AS(load_pgm(bytes_of("P2\n1 1\n255\n77\n"), -1), std::invalid_argument);
}

TEST_CASE("save_pgm trivial streams") {
    const std::vector<std::uint8_t> empty = save_pgm(BinaryGrid(2, 2));
    const std::string header = "P5\n2 2\n255\n";
    REQUIRE(empty.size() == header.size() + 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(empty[header.size() + i] == 255);

    const std::vector<std::uint8_t> single = save_pgm(BinaryGrid::from_pixels(1, 1, {{0, 0}}));
    CHECK(single.back() == 0);
}

TEST_CASE("pgm round trip") {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const BinaryGrid g = oracles::random_grid(rng, 8, 8, rng.next_unit(), false);
        CHECK(load_pgm(save_pgm(g), 128) == g);
    }
}

TEST_CASE("adjacency graph counts") {
    const GridGraph g1 = adjacency_graph(BinaryGrid(1, 1));
    CHECK(g1.vertex_count() == 1);
    CHECK(g1.edge_count() == 0);

    const GridGraph g2 = adjacency_graph(BinaryGrid(2, 2));
    CHECK(g2.vertex_count() == 4);
    CHECK(g2.edge_count() == 4);

    for (int w = 1; w <= 16; ++w)
        for (int h = 1; h <= 16; ++h) {
            const GridGraph g(w, h);
            std::size_t degree_sum = 0;
            int max_degree = 0;
            for (int v = 0; v < int(g.vertex_count()); ++v) {
                int deg = 0;
                g.for_each_neighbor(v, [&](int) { ++deg; });
                degree_sum += std::size_t(deg);
                max_degree = std::max(max_degree, deg);
            }
            CHECK(degree_sum == 2 * g.edge_count());
            CHECK(g.edge_count() == std::size_t(w) * (h - 1) + std::size_t(h) * (w - 1));
            CHECK(max_degree <= 4);
        }
}

TEST_CASE("make_star component structure") {
    SUBCASE("single arm is connected") {
        const BinaryGrid star = make_star(1, 10, 3, 48, 48);
        int components = 0;
        oracles::label_components(48, 48, star.mask(), &components);
        CHECK(components == 1);
    }

    SUBCASE("removing the core leaves one component per arm") {
        for (int arms : {1, 2, 3, 5, 8}) {
            const BinaryGrid star = make_star(arms, 12, 3, 96, 96);
            const double core = star_core_radius(arms, 3);
            const double cx = (96 - 1) / 2.0;
            const double cy = (96 - 1) / 2.0;
            std::vector<std::uint8_t> alive(star.mask());
            for (int y = 0; y < 96; ++y)
                for (int x = 0; x < 96; ++x)
                    if ((x - cx) * (x - cx) + (y - cy) * (y - cy) <= core * core)
                        alive[star.index(x, y)] = 0;
            int components = 0;
            oracles::label_components(96, 96, alive, &components);
            CHECK(components == arms);
        }
    }

    SUBCASE("eight radial sublevel branches") {
        const BinaryGrid star = make_star(8, 40, 5, 256, 256);
        const double cx = (256 - 1) / 2.0;
        const double cy = (256 - 1) / 2.0;
        const ScalarField phi = radial_field(256, 256, cx, cy);
        const double level = -(star_core_radius(8, 5) + 20.0);
        std::vector<std::uint8_t> alive(star.pixel_count(), 0);
        for (int y = 0; y < 256; ++y)
            for (int x = 0; x < 256; ++x)
                if (star.foreground(x, y) && phi.at(x, y) <= level) alive[star.index(x, y)] = 1;
        int components = 0;
        oracles::label_components(256, 256, alive, &components);
        CHECK(components == 8);
    }

    SUBCASE("two arms are exactly symmetric under 180 degree rotation") {
        const BinaryGrid star = make_star(2, 15, 3, 64, 64);
        for (int y = 0; y < 64; ++y)
            for (int x = 0; x < 64; ++x)
                CHECK(star.foreground(x, y) == star.foreground(63 - x, 63 - y));
    }

    SUBCASE("overflowing geometry is rejected") {
        CHECK_THROWS_AS(make_star(8, 100, 3, 64, 64), std::invalid_argument);
    }
}

TEST_SUITE_END();
