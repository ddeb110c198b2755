#include <catch2/catch_amalgamated.hpp>

#include "brute.hpp"
#include "sgf/sgf.hpp"

using namespace sgf;

TEST_CASE("construction rejects loops and degrees above 3", "[core]") {
    CHECK_THROWS_AS(SignedGraph::from_edges(2, {{0, 0, 1}}), PreconditionError);
    CHECK_THROWS_AS(SignedGraph::from_edges(5, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {0, 4, 1}}),
                    PreconditionError);
    // parallel edges are fine
    SignedGraph dig = SignedGraph::from_edges(2, {{0, 1, 1}, {0, 1, -1}});
    CHECK(dig.degree(0) == 2);
}

TEST_CASE("boundary on single edges", "[core]") {
    SignedGraph pos = SignedGraph::from_edges(2, {{0, 1, 1}});
    Orientation t;
    t.tau[0] = {1, -1}; // out of 0, into 1
    EdgeFunction f;
    f.tag = Mod::integers;
    f.set(0, 1);
    auto b = boundary(pos, t, f);
    CHECK(b.at(0) == 1);
    CHECK(b.at(1) == -1);

    SignedGraph neg = SignedGraph::from_edges(2, {{0, 1, -1}});
    Orientation tn;
    tn.tau[0] = {1, 1}; // both directed away
    auto bn = boundary(neg, tn, f);
    CHECK(bn.at(0) == 1);
    CHECK(bn.at(1) == 1);

    SignedGraph p = generate_petersen();
    auto z = boundary(p, canonical_orientation(p), EdgeFunction::zeros(p, Mod::integers));
    for (auto& [v, x] : z) CHECK(x == 0);

    EdgeFunction missing;
    missing.tag = Mod::integers;
    CHECK_THROWS_AS(boundary(pos, t, missing), DomainError);
}

TEST_CASE("switching", "[core]") {
    SignedGraph tri = SignedGraph::from_edges(3, {{0, 1, -1}, {1, 2, 1}, {2, 0, 1}});
    CHECK(switch_signature(tri, {}).edges() == tri.edges());
    SignedGraph twice = switch_signature(switch_signature(tri, {0, 2}), {0, 2});
    for (const Edge& e : tri.edges()) CHECK(twice.sign(e.id) == e.sign);

    // one endpoint of the negative edge: one negative edge again, triangle sign unchanged
    SignedGraph sw = switch_signature(tri, {0});
    int negs = 0;
    for (const Edge& e : sw.edges()) negs += e.sign == -1;
    CHECK(negs == 1);
    Cycle c{{0, 1, 2}, {0, 1, 2}};
    CHECK(cycle_sign(sw, c) == -1);
    CHECK(cycle_sign(tri, c) == -1);
}

TEST_CASE("switching invariance of cycle signs", "[core]") {
    std::mt19937 rng(7);
    for (int it = 0; it < 40; ++it) {
        SignedGraph g = brute::random_subcubic_signed(rng, 9);
        std::set<VertexId> x;
        for (VertexId v : g.vertices())
            if (rng() % 2) x.insert(v);
        SignedGraph sw = switch_signature(g, x);
        for (const Cycle& c : enumerate_cycles(g)) CHECK(cycle_sign(g, c) == cycle_sign(sw, c));
    }
}

TEST_CASE("is_balanced", "[core]") {
    SignedGraph p = generate_petersen();
    BalanceCertificate cert = is_balanced(p);
    REQUIRE(cert.balanced());
    for (auto& [v, s] : *cert.bipartition) CHECK(s == 0);

    SignedGraph tri = SignedGraph::from_edges(3, {{0, 1, -1}, {1, 2, 1}, {2, 0, 1}});
    BalanceCertificate tc = is_balanced(tri);
    REQUIRE_FALSE(tc.balanced());
    CHECK(tc.witness_cycle->length() == 3);
    CHECK(cycle_sign(tri, *tc.witness_cycle) == -1);

    SignedGraph p2 = generate_petersen({0, 10});
    BalanceCertificate pc = is_balanced(p2);
    REQUIRE_FALSE(pc.balanced());
    CHECK(is_valid_cycle(p2, *pc.witness_cycle));
    CHECK(cycle_sign(p2, *pc.witness_cycle) == -1);
    CHECK(pc.witness_cycle->length() == 5); // a negative pentagon
}

TEST_CASE("is_balanced agrees with exhaustive cycle signs", "[core]") {
    std::mt19937 rng(11);
    for (int it = 0; it < 60; ++it) {
        SignedGraph g = brute::random_subcubic_signed(rng, 10);
        bool any_negative = false;
        for (const Cycle& c : enumerate_cycles(g))
            if (cycle_sign(g, c) == -1) any_negative = true;
        BalanceCertificate cert = is_balanced(g);
        CHECK(cert.balanced() == !any_negative);
        if (cert.balanced()) {
            // negative edges cross the parts, positive edges do not
            for (const Edge& e : g.edges()) {
                bool crosses = cert.bipartition->at(e.u) != cert.bipartition->at(e.v);
                CHECK(crosses == (e.sign == -1));
            }
        } else {
            CHECK(cycle_sign(g, *cert.witness_cycle) == -1);
        }
    }
}

TEST_CASE("cycle_sign basics", "[core]") {
    SignedGraph c4 = SignedGraph::from_edges(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 0, 1}});
    Cycle c{{0, 1, 2, 3}, {0, 1, 2, 3}};
    CHECK(cycle_sign(c4, c) == 1);
    SignedGraph one = SignedGraph::from_edges(4, {{0, 1, -1}, {1, 2, 1}, {2, 3, 1}, {3, 0, 1}});
    CHECK(cycle_sign(one, c) == -1);
    SignedGraph two = SignedGraph::from_edges(4, {{0, 1, -1}, {1, 2, -1}, {2, 3, 1}, {3, 0, 1}});
    CHECK(cycle_sign(two, c) == 1);
    Cycle bad{{0, 1, 2}, {0, 1, 2}};
    CHECK_THROWS_AS(cycle_sign(c4, bad), PreconditionError);
}

TEST_CASE("subdivide_edge", "[core]") {
    SignedGraph tri = SignedGraph::from_edges(3, {{0, 1, -1}, {1, 2, 1}, {2, 0, 1}});
    auto [g2, x] = subdivide_edge(tri, 0);
    CHECK(x == 3);
    CHECK(g2.degree(x) == 2);
    CHECK(g2.sign(0) == -1);          // first part keeps sigma(e)
    CHECK(g2.sign(g2.max_edge_id()) == 1); // second part positive
    // the triangle becomes a negative 4-cycle
    Cycle c{{0, x, 1, 2}, {0, 3, 1, 2}};
    CHECK(is_valid_cycle(g2, c));
    CHECK(cycle_sign(g2, c) == -1);

    auto [g3, y] = subdivide_edge(tri, 1); // positive edge: both parts positive
    CHECK(g3.sign(1) == 1);
    CHECK(g3.sign(g3.max_edge_id()) == 1);
    (void)y;
}

TEST_CASE("flip_edge", "[core]") {
    SignedGraph p = generate_petersen({3});
    Orientation t = canonical_orientation(p);
    EdgeFunction f;
    f.tag = Mod::integers;
    for (const Edge& e : p.edges()) f.set(e.id, (e.id * 7) % 5 - 2);
    auto before = boundary(p, t, f);

    auto [t1, f1] = flip_edge(p, t, f, 3);
    CHECK(boundary(p, t1, f1) == before);
    CHECK(f1.at(3) == -f.at(3));
    auto [t2, f2] = flip_edge(p, t1, f1, 3);
    CHECK(t2.tau == t.tau);
    CHECK(f2.val == f.val);

    // flip with value 0: only the orientation moves
    EdgeFunction z = EdgeFunction::zeros(p, Mod::integers);
    auto [t3, z3] = flip_edge(p, t, z, 0);
    CHECK(z3.val == z.val);
    CHECK(t3.tau.at(0).first == -t.tau.at(0).first);
    CHECK(boundary(p, t3, z3) == boundary(p, t, z));

    // positive edge u->v with value 1 becomes v->u with value -1
    SignedGraph pos = SignedGraph::from_edges(2, {{0, 1, 1}});
    Orientation tp;
    tp.tau[0] = {1, -1};
    EdgeFunction fp;
    fp.tag = Mod::integers;
    fp.set(0, 1);
    auto [tq, fq] = flip_edge(pos, tp, fp, 0);
    CHECK(tq.tau.at(0) == std::make_pair(-1, 1));
    CHECK(fq.at(0) == -1);
    CHECK(boundary(pos, tq, fq) == boundary(pos, tp, fp));
}

TEST_CASE("boundary conservation on all-positive graphs", "[core]") {
    std::mt19937 rng(5);
    for (int it = 0; it < 30; ++it) {
        SignedGraph g0 = brute::random_subcubic_signed(rng, 9);
        std::vector<Edge> es = g0.edges();
        for (Edge& e : es) e.sign = 1;
        SignedGraph g(g0.vertices(), es);
        Orientation t = canonical_orientation(g);
        EdgeFunction f;
        f.tag = Mod::integers;
        for (const Edge& e : g.edges()) f.set(e.id, static_cast<int>(rng() % 9) - 4);
        long long total = 0;
        for (auto& [v, x] : boundary(g, t, f)) total += x;
        CHECK(total == 0);
    }
}

TEST_CASE("orientation validity and canonical form", "[core]") {
    SignedGraph p = generate_petersen({0, 7});
    Orientation t = canonical_orientation(p);
    CHECK(valid_orientation(p, t));
    t.tau[0].first = -t.tau[0].first;
    CHECK_FALSE(valid_orientation(p, t));
}

TEST_CASE("preflow predicate supports degree-1 vertices", "[core]") {
    SignedGraph e = SignedGraph::from_edges(2, {{0, 1, 1}});
    Orientation t = canonical_orientation(e);
    EdgeFunction f;
    f.tag = Mod::mod3;
    f.set(0, 1);
    CHECK(is_preflow(e, t, f));
    EdgeFunction z = EdgeFunction::zeros(e, Mod::mod3);
    CHECK_FALSE(is_preflow(e, t, z));
}

TEST_CASE("mod-3 values stored canonically", "[core]") {
    EdgeFunction f;
    f.tag = Mod::mod3;
    f.set(0, -1);
    CHECK(f.at(0) == 2);
    f.add(0, 2);
    CHECK(f.at(0) == 1);
}
