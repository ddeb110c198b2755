#include <catch2/catch_amalgamated.hpp>

#include "brute.hpp"
#include "sgf/sgf.hpp"

using namespace sgf;

TEST_CASE("petersen cycle census", "[cycles]") {
    SignedGraph p = generate_petersen();
    auto all = enumerate_cycles(p);
    CHECK(all.size() == 57);
    int pent = 0, hexes = 0;
    for (const Cycle& c : all) {
        if (c.length() == 5) ++pent;
        if (c.length() == 6) ++hexes;
        CHECK(is_valid_cycle(p, c));
    }
    CHECK(pent == 12);
    CHECK(hexes == 10);
    CHECK(chordless_cycles(p).size() == 22); // pentagons and hexagons only
}

TEST_CASE("digons are cycles", "[cycles]") {
    SignedGraph dig = SignedGraph::from_edges(2, {{0, 1, 1}, {0, 1, -1}});
    auto all = enumerate_cycles(dig);
    REQUIRE(all.size() == 1);
    CHECK(all[0].length() == 2);
    CHECK(cycle_sign(dig, all[0]) == -1);
}

TEST_CASE("enumeration finds each cycle once", "[cycles]") {
    std::mt19937 rng(3);
    for (int it = 0; it < 25; ++it) {
        SignedGraph g = brute::random_subcubic_signed(rng, 10);
        auto all = enumerate_cycles(g);
        std::set<std::vector<EdgeId>> keys;
        for (const Cycle& c : all) {
            CHECK(is_valid_cycle(g, c));
            CHECK(keys.insert(c.sorted_edges()).second);
        }
    }
}

TEST_CASE("negative cycle filtering", "[cycles]") {
    SignedGraph p = generate_petersen({0, 10});
    for (const Cycle& c : negative_cycles(p)) CHECK(cycle_sign(p, c) == -1);
    CHECK(negative_cycles(p).size() == 30);
    CHECK(negative_cycles(generate_petersen()).empty());
}

TEST_CASE("blocks and bridges", "[cycles]") {
    // two triangles joined by a bridge
    SignedGraph g = SignedGraph::from_edges(
        6, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}, {2, 3, 1}, {3, 4, 1}, {4, 5, 1}, {5, 3, 1}});
    auto bl = blocks(g);
    CHECK(bl.size() == 3);
    CHECK(bridges(g) == std::set<EdgeId>{3});

    SignedGraph p = generate_petersen();
    CHECK(blocks(p).size() == 1);
    CHECK(bridges(p).empty());
}

TEST_CASE("unbalanced theta presence via blocks", "[cycles]") {
    CHECK_FALSE(has_unbalanced_theta(generate_petersen()));
    CHECK(has_unbalanced_theta(generate_petersen({5}))); // one negative spoke
    // a lone negative cycle has no theta at all
    SignedGraph c5 = SignedGraph::from_edges(5, {{0, 1, -1}, {1, 2, 1}, {2, 3, 1}, {3, 4, 1}, {4, 0, 1}});
    CHECK_FALSE(has_unbalanced_theta(c5));
}

TEST_CASE("bfs_path determinism and avoidance", "[cycles]") {
    SignedGraph p = generate_petersen();
    auto path = bfs_path(p, {0}, {7});
    REQUIRE(path);
    CHECK(path->verts.front() == 0);
    CHECK(path->verts.back() == 7);
    auto blocked = bfs_path(p, {0}, {2}, {1, 4}, {});
    REQUIRE(blocked);
    for (size_t i = 1; i + 1 < blocked->verts.size(); ++i)
        CHECK_FALSE(std::set<VertexId>{1, 4}.count(blocked->verts[i]));
    auto none = bfs_path(p, {0}, {2}, {1, 4, 5}, {}); // all of 0's neighbours
    CHECK_FALSE(none);
}
