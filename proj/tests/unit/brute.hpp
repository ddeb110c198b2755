#pragma once

// Test-only oracles: independent brute-force references the library is
// checked against. Deliberately naive.

#include <map>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "sgf/sgf.hpp"

namespace brute {

// Maximum matching size by bitmask DP over <= ~20 vertices.
inline int max_matching_size(const sgf::Multigraph& h) {
    std::map<sgf::VertexId, int> ix;
    for (sgf::VertexId v : h.verts) ix[v] = static_cast<int>(ix.size());
    const int n = static_cast<int>(ix.size());
    std::vector<std::vector<int>> adj(n);
    for (const auto& e : h.edges) {
        adj[ix.at(e.u)].push_back(ix.at(e.v));
        adj[ix.at(e.v)].push_back(ix.at(e.u));
    }
    std::vector<int> memo(static_cast<size_t>(1) << n, -1);
    memo[0] = 0;
    std::vector<unsigned> order;
    for (unsigned mask = 1; mask < (1u << n); ++mask) order.push_back(mask);
    for (unsigned mask : order) {
        int v = __builtin_ctz(mask);
        int best = memo[mask ^ (1u << v)]; // leave v uncovered
        for (int w : adj[v])
            if (mask & (1u << w))
                best = std::max(best, 1 + memo[mask ^ (1u << v) ^ (1u << w)]);
        memo[mask] = best;
    }
    return memo[(1u << n) - 1];
}

// Cyclic edge connectivity by full subset enumeration (cubic, n <= 14).
inline std::optional<int> cyclic_edge_connectivity(const sgf::SignedGraph& g) {
    const auto& vs = g.vertices();
    const int n = static_cast<int>(vs.size());
    auto side_has_cycle = [&](const std::set<sgf::VertexId>& side) {
        sgf::SignedGraph sub = g.induced(side);
        return sub.edge_count() > sub.vertex_count() - static_cast<int>(sgf::components(sub).size());
    };
    std::optional<int> best;
    for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
        std::set<sgf::VertexId> a, b;
        for (int i = 0; i < n; ++i)
            (mask & (1u << i) ? a : b).insert(vs[i]);
        if (!side_has_cycle(a) || !side_has_cycle(b)) continue;
        int cut = 0;
        for (const sgf::Edge& e : g.edges())
            if ((a.count(e.u) > 0) != (a.count(e.v) > 0)) ++cut;
        if (!best || cut < *best) best = cut;
    }
    return best;
}

// All tau : E(c) -> Z3 with boundary b, by trying 3^L assignments.
inline std::optional<sgf::EdgeFunction> solve_cycle_boundary(const sgf::SignedGraph& g,
                                                             const sgf::Orientation& t,
                                                             const sgf::Cycle& c,
                                                             const sgf::BoundaryTarget& b) {
    const int L = c.length();
    long long total = 1;
    for (int i = 0; i < L; ++i) total *= 3;
    for (long long it = 0; it < total; ++it) {
        sgf::EdgeFunction f;
        f.tag = sgf::Mod::mod3;
        long long x = it;
        for (int i = 0; i < L; ++i) {
            f.set(c.edges[i], static_cast<int>(x % 3));
            x /= 3;
        }
        bool ok = true;
        for (int i = 0; i < L && ok; ++i) {
            sgf::VertexId v = c.verts[i];
            long long acc = 0;
            for (int j = 0; j < L; ++j) {
                const sgf::Edge& e = g.edge(c.edges[j]);
                if (e.u == v) acc += t.at(e, e.u) * f.at(e.id);
                if (e.v == v) acc += t.at(e, e.v) * f.at(e.id);
            }
            if (sgf::canon3(acc) != b.at(v)) ok = false;
        }
        if (ok) return f;
    }
    return std::nullopt;
}

inline sgf::Multigraph random_multigraph(std::mt19937& rng, int max_n = 12) {
    std::uniform_int_distribution<int> nd(1, max_n);
    int n = nd(rng);
    std::uniform_real_distribution<double> pd(0.0, 1.0);
    double p = std::uniform_real_distribution<double>(0.15, 0.85)(rng);
    std::vector<sgf::VertexId> vs;
    for (int i = 0; i < n; ++i) vs.push_back(i);
    std::vector<sgf::Multigraph::MEdge> es;
    sgf::EdgeId next = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (pd(rng) < p) es.push_back({next++, i, j});
    return sgf::Multigraph(std::move(vs), std::move(es));
}

// Random connected subcubic signed graph on <= max_n vertices.
inline sgf::SignedGraph random_subcubic_signed(std::mt19937& rng, int max_n = 10) {
    int n = std::uniform_int_distribution<int>(3, max_n)(rng);
    std::vector<std::tuple<int, int, int>> es;
    std::vector<int> deg(n, 0);
    // random spanning tree first
    for (int v = 1; v < n; ++v) {
        int tries = 0;
        while (tries++ < 50) {
            int u = std::uniform_int_distribution<int>(0, v - 1)(rng);
            if (deg[u] < 3) {
                int s = std::uniform_int_distribution<int>(0, 1)(rng) ? 1 : -1;
                es.push_back({u, v, s});
                deg[u]++;
                deg[v]++;
                break;
            }
        }
    }
    int extra = std::uniform_int_distribution<int>(0, n)(rng);
    for (int i = 0; i < extra; ++i) {
        int u = std::uniform_int_distribution<int>(0, n - 1)(rng);
        int v = std::uniform_int_distribution<int>(0, n - 1)(rng);
        if (u == v || deg[u] >= 3 || deg[v] >= 3) continue;
        int s = std::uniform_int_distribution<int>(0, 1)(rng) ? 1 : -1;
        es.push_back({u, v, s});
        deg[u]++;
        deg[v]++;
    }
    return sgf::SignedGraph::from_edges(n, es);
}

inline sgf::SignedGraph k33(const std::vector<sgf::EdgeId>& negatives = {}) {
    std::vector<std::tuple<int, int, int>> es;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) es.push_back({a, 3 + b, 1});
    sgf::SignedGraph g = sgf::SignedGraph::from_edges(6, es);
    if (negatives.empty()) return g;
    std::vector<sgf::Edge> edges = g.edges();
    for (sgf::EdgeId id : negatives) edges[id].sign = -1;
    return sgf::SignedGraph(g.vertices(), edges);
}

// A theta graph: two branch vertices joined by three paths with the given
// interior sizes; per-branch signs place one negative edge on branches
// listed negative. Vertices: 0 and 1 are the branch vertices.
inline sgf::SignedGraph theta_graph(const std::vector<int>& interior, const std::vector<bool>& negative) {
    std::vector<std::tuple<int, int, int>> es;
    int next = 2;
    for (size_t b = 0; b < interior.size(); ++b) {
        int prev = 0;
        for (int i = 0; i < interior[b]; ++i) {
            es.push_back({prev, next, (i == 0 && negative[b]) ? -1 : 1});
            prev = next++;
        }
        es.push_back({prev, 1, (interior[b] == 0 && negative[b]) ? -1 : 1});
    }
    return sgf::SignedGraph::from_edges(next, es);
}

} // namespace brute
