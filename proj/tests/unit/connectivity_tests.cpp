#include <catch2/catch_amalgamated.hpp>

#include "brute.hpp"
#include "sgf/sgf.hpp"

using namespace sgf;

namespace {
SignedGraph k4() {
    return SignedGraph::from_edges(4, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {1, 2, 1}, {1, 3, 1}, {2, 3, 1}});
}
} // namespace

TEST_CASE("vertex connectivity", "[connectivity]") {
    CHECK(vertex_connectivity(k4()) == 3);
    CHECK(vertex_connectivity(SignedGraph::from_edges(3, {{0, 1, 1}, {1, 2, 1}})) == 1);
    CHECK(vertex_connectivity(generate_petersen()) == 3);
    CHECK(vertex_connectivity(SignedGraph::from_edges(4, {{0, 1, 1}, {2, 3, 1}})) == 0);
}

TEST_CASE("cyclic edge connectivity anchors", "[connectivity]") {
    CHECK_FALSE(cyclic_edge_connectivity(k4()).has_value()); // no two disjoint cycles
    CHECK(cyclic_edge_connectivity(generate_cube()) == 4);
    CHECK(cyclic_edge_connectivity(generate_petersen()) == 5);
    CHECK(cyclic_edge_connectivity(generate_prism(3)) == 3);
    CHECK_THROWS_AS(cyclic_edge_connectivity(SignedGraph::from_edges(3, {{0, 1, 1}, {1, 2, 1}})),
                    PreconditionError);
}

TEST_CASE("cyclic edge connectivity equals subset brute force", "[connectivity]") {
    std::vector<SignedGraph> fixtures{k4(), brute::k33(), generate_cube(), generate_prism(3),
                                      generate_prism(5), generate_prism(6), generate_petersen()};
    std::mt19937 rng(17);
    for (int i = 0; i < 6; ++i) fixtures.push_back(generate_random_cubic(8 + 2 * (i % 3), 100 + i));
    for (const SignedGraph& g : fixtures) {
        if (g.vertex_count() > 12) continue;
        CHECK(cyclic_edge_connectivity(g) == brute::cyclic_edge_connectivity(g));
    }
}

TEST_CASE("cut parity in cubic graphs", "[connectivity]") {
    std::mt19937 rng(23);
    for (int it = 0; it < 20; ++it) {
        SignedGraph g = generate_random_cubic(10, 500 + it);
        std::set<VertexId> x;
        for (VertexId v : g.vertices())
            if (rng() % 2) x.insert(v);
        int cut = 0;
        for (const Edge& e : g.edges())
            if ((x.count(e.u) > 0) != (x.count(e.v) > 0)) ++cut;
        CHECK(cut % 2 == static_cast<int>(x.size()) % 2);
    }
}

TEST_CASE("disjoint paths", "[connectivity]") {
    SignedGraph p = generate_petersen();
    // adjacent endpoints, k = 1
    auto one = disjoint_paths(p, 0, {1}, 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0].length() == 1);

    // fan from an outer vertex into the inner cycle
    std::set<VertexId> inner{5, 6, 7, 8, 9};
    auto fan = disjoint_paths(p, 0, inner, 3);
    REQUIRE(fan.size() == 3);
    std::set<VertexId> seen;
    for (const Path& q : fan) {
        CHECK(q.verts.front() == 0);
        CHECK(inner.count(q.verts.back()) == 1);
        for (size_t i = 0; i + 1 < q.verts.size(); ++i) CHECK_FALSE(inner.count(q.verts[i]));
        for (size_t i = 1; i < q.verts.size(); ++i) CHECK(seen.insert(q.verts[i]).second);
    }

    // more paths than the degree allows
    CHECK_THROWS_MATCHES(disjoint_paths(p, 0, inner, 4), NotEnoughPaths,
                         Catch::Matchers::Predicate<NotEnoughPaths>(
                             [](const NotEnoughPaths& e) { return e.achievable == 3; }));
}

TEST_CASE("min_cut_between", "[connectivity]") {
    SignedGraph two = SignedGraph::from_edges(4, {{0, 1, 1}, {2, 3, 1}});
    EdgeCut empty = min_cut_between(two, {0}, {2});
    CHECK(empty.edges.empty());

    SignedGraph bridged = SignedGraph::from_edges(
        6, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}, {2, 3, 1}, {3, 4, 1}, {4, 5, 1}, {5, 3, 1}});
    EdgeCut b = min_cut_between(bridged, {0}, {4});
    CHECK(b.edges == std::set<EdgeId>{3});

    SignedGraph p = generate_petersen();
    EdgeCut spokes = min_cut_between(p, {0, 1, 2, 3, 4}, {5, 6, 7, 8, 9});
    CHECK(spokes.edges == std::set<EdgeId>{5, 6, 7, 8, 9});

    CHECK_THROWS_AS(min_cut_between(p, {0}, {0}), PreconditionError);
}
