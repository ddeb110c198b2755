#pragma once

// Connectivity predicates and disjoint-path machinery. Everything runs at
// desk scale (a few dozen vertices) on top of a plain augmenting-path
// max-flow, so correctness and determinism win over asymptotics.

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "cycles.hpp"
#include "graph.hpp"

namespace sgf {

struct EdgeCut {
    std::set<VertexId> side;  // X
    std::set<EdgeId> edges;   // delta(X)
};

namespace detail {

struct FlowNet {
    struct Arc {
        int to;
        int cap;
        int flow;
        EdgeId tag; // original edge id, -1 for auxiliary arcs
    };
    int n = 0;
    std::vector<Arc> arcs;
    std::vector<std::vector<int>> adj;

    explicit FlowNet(int nodes) : n(nodes), adj(nodes) {}

    void add(int a, int b, int cap, EdgeId tag = -1) {
        adj[a].push_back(static_cast<int>(arcs.size()));
        arcs.push_back({b, cap, 0, tag});
        adj[b].push_back(static_cast<int>(arcs.size()));
        arcs.push_back({a, 0, 0, tag});
    }

    // Edmonds-Karp, stopping once `limit` units have been pushed.
    int maxflow(int s, int t, int limit = std::numeric_limits<int>::max()) {
        int total = 0;
        while (total < limit) {
            std::vector<int> pre(n, -1);
            std::vector<int> q{s};
            pre[s] = -2;
            for (size_t qi = 0; qi < q.size() && pre[t] == -1; ++qi) {
                int v = q[qi];
                for (int ai : adj[v]) {
                    const Arc& a = arcs[ai];
                    if (a.cap - a.flow > 0 && pre[a.to] == -1) {
                        pre[a.to] = ai;
                        q.push_back(a.to);
                    }
                }
            }
            if (pre[t] == -1) break;
            int push = limit - total;
            for (int v = t; v != s;) {
                const Arc& a = arcs[pre[v]];
                push = std::min(push, a.cap - a.flow);
                v = arcs[pre[v] ^ 1].to;
            }
            for (int v = t; v != s;) {
                arcs[pre[v]].flow += push;
                arcs[pre[v] ^ 1].flow -= push;
                v = arcs[pre[v] ^ 1].to;
            }
            total += push;
        }
        return total;
    }

    std::set<int> residual_reachable(int s) const {
        std::set<int> seen{s};
        std::vector<int> stack{s};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int ai : adj[v]) {
                const Arc& a = arcs[ai];
                if (a.cap - a.flow > 0 && seen.insert(a.to).second) stack.push_back(a.to);
            }
        }
        return seen;
    }
};

// Dense 0..n-1 indexing of a graph's (possibly sparse) vertex ids.
struct VertexIndex {
    std::map<VertexId, int> to_idx;
    std::vector<VertexId> to_id;
    explicit VertexIndex(const SignedGraph& g) {
        for (VertexId v : g.vertices()) {
            to_idx[v] = static_cast<int>(to_id.size());
            to_id.push_back(v);
        }
    }
};

inline int vertex_flow_between(const SignedGraph& g, VertexId s, VertexId t) {
    VertexIndex ix(g);
    int n = static_cast<int>(ix.to_id.size());
    const int INF = 1 << 20;
    FlowNet net(2 * n);
    for (int i = 0; i < n; ++i) {
        VertexId v = ix.to_id[i];
        net.add(2 * i, 2 * i + 1, (v == s || v == t) ? INF : 1);
    }
    for (const Edge& e : g.edges()) {
        int a = ix.to_idx.at(e.u), b = ix.to_idx.at(e.v);
        net.add(2 * a + 1, 2 * b, INF);
        net.add(2 * b + 1, 2 * a, INF);
    }
    return net.maxflow(2 * ix.to_idx.at(s) + 1, 2 * ix.to_idx.at(t));
}

} // namespace detail

// Size of a minimum vertex cut; n-1 for complete graphs, 0 when disconnected.
inline int vertex_connectivity(const SignedGraph& g) {
    int n = g.vertex_count();
    if (n <= 1) return 0;
    if (!g.connected()) return 0;
    std::set<std::pair<VertexId, VertexId>> adjacent;
    for (const Edge& e : g.edges())
        adjacent.insert(std::minmax(e.u, e.v));
    int best = n - 1;
    bool any_pair = false;
    for (VertexId s : g.vertices())
        for (VertexId t : g.vertices()) {
            if (s >= t || adjacent.count({s, t})) continue;
            any_pair = true;
            best = std::min(best, detail::vertex_flow_between(g, s, t));
        }
    return any_pair ? best : n - 1;
}

// Minimum edge cut separating vertex set a from b; ties resolved by taking
// the unique inclusion-minimal source side of the final residual network.
inline EdgeCut min_cut_between(const SignedGraph& g, const std::set<VertexId>& a,
                               const std::set<VertexId>& b) {
    if (a.empty() || b.empty()) throw PreconditionError("min_cut_between: empty side");
    for (VertexId v : a)
        if (b.count(v)) throw PreconditionError("min_cut_between: sides intersect");
    detail::VertexIndex ix(g);
    int n = static_cast<int>(ix.to_id.size());
    const int INF = 1 << 20;
    detail::FlowNet net(n + 2);
    int S = n, T = n + 1;
    for (const Edge& e : g.edges()) {
        int u = ix.to_idx.at(e.u), v = ix.to_idx.at(e.v);
        net.add(u, v, 1, e.id);
        net.add(v, u, 1, e.id);
    }
    for (VertexId v : a) net.add(S, ix.to_idx.at(v), INF);
    for (VertexId v : b) net.add(ix.to_idx.at(v), T, INF);
    net.maxflow(S, T);
    std::set<int> reach = net.residual_reachable(S);
    EdgeCut cut;
    for (int i = 0; i < n; ++i)
        if (reach.count(i)) cut.side.insert(ix.to_id[i]);
    for (const Edge& e : g.edges()) {
        bool iu = cut.side.count(e.u) > 0, iv = cut.side.count(e.v) > 0;
        if (iu != iv) cut.edges.insert(e.id);
    }
    return cut;
}

// Minimum |delta(X)| over X such that both sides contain a cycle; nullopt
// when no two vertex-disjoint cycles exist. Computed as the minimum edge cut
// over pairs of vertex-disjoint chordless cycles, which hits every
// cycle-separating cut exactly.
inline std::optional<int> cyclic_edge_connectivity(const SignedGraph& g) {
    if (!g.is_cubic()) throw PreconditionError("cyclic_edge_connectivity: graph is not cubic");
    if (!g.connected()) throw PreconditionError("cyclic_edge_connectivity: graph is not connected");
    std::vector<Cycle> cyc = chordless_cycles(g);
    std::optional<int> best;
    for (size_t i = 0; i < cyc.size(); ++i) {
        std::set<VertexId> vi(cyc[i].verts.begin(), cyc[i].verts.end());
        for (size_t j = i + 1; j < cyc.size(); ++j) {
            bool disjoint = true;
            for (VertexId v : cyc[j].verts)
                if (vi.count(v)) {
                    disjoint = false;
                    break;
                }
            if (!disjoint) continue;
            std::set<VertexId> vj(cyc[j].verts.begin(), cyc[j].verts.end());
            EdgeCut cut = min_cut_between(g, vi, vj);
            int size = static_cast<int>(cut.edges.size());
            if (!best || size < *best) best = size;
        }
    }
    return best;
}

// k paths from the source (a vertex or a vertex set) into `targets`,
// pairwise disjoint except at a shared single-vertex source, internally
// disjoint from the targets. Throws NotEnoughPaths with the achievable count.
inline std::vector<Path> disjoint_paths(const SignedGraph& g, const std::set<VertexId>& sources,
                                        const std::set<VertexId>& targets, int k,
                                        bool single_source) {
    if (k < 1) throw PreconditionError("disjoint_paths: k must be >= 1");
    if (sources.empty() || targets.empty()) throw PreconditionError("disjoint_paths: empty endpoint set");
    for (VertexId s : sources)
        if (targets.count(s)) throw PreconditionError("disjoint_paths: source inside targets");
    if (single_source && sources.size() != 1)
        throw PreconditionError("disjoint_paths: single_source with several sources");

    detail::VertexIndex ix(g);
    int n = static_cast<int>(ix.to_id.size());
    const int INF = 1 << 20;
    detail::FlowNet net(2 * n + 2);
    int S = 2 * n, T = 2 * n + 1;
    auto in_node = [](int i) { return 2 * i; };
    auto out_node = [](int i) { return 2 * i + 1; };
    for (int i = 0; i < n; ++i) {
        VertexId v = ix.to_id[i];
        int cap = 1;
        if (targets.count(v)) cap = 0;                    // nothing passes through a target
        if (single_source && sources.count(v)) cap = INF; // fan point
        net.add(in_node(i), out_node(i), cap);
    }
    for (const Edge& e : g.edges()) {
        int u = ix.to_idx.at(e.u), v = ix.to_idx.at(e.v);
        // No arc ever enters a single-vertex source, so no walk can revisit it.
        if (!(single_source && sources.count(e.v)))
            net.add(out_node(u), in_node(v), 1, e.id);
        if (!(single_source && sources.count(e.u)))
            net.add(out_node(v), in_node(u), 1, e.id);
    }
    for (VertexId s : sources) net.add(S, single_source ? out_node(ix.to_idx.at(s)) : in_node(ix.to_idx.at(s)), single_source ? INF : 1);
    for (VertexId t : targets) net.add(in_node(ix.to_idx.at(t)), T, 1);
    int got = net.maxflow(S, T, k);
    if (got < k) {
        got += net.maxflow(S, T); // exact achievable count for the error report
        throw NotEnoughPaths(k, got);
    }

    // Decompose the flow into paths, consuming one unit per arc traversal.
    std::vector<Path> out;
    for (int round = 0; round < k; ++round) {
        Path p;
        int cur = S;
        while (cur != T) {
            int chosen = -1;
            for (int ai : net.adj[cur]) {
                const auto& a = net.arcs[ai];
                if ((ai & 1) == 0 && a.flow > 0) {
                    chosen = ai;
                    break;
                }
            }
            if (chosen == -1) throw BugReport("disjoint_paths: flow decomposition failed");
            net.arcs[chosen].flow -= 1;
            const auto& a = net.arcs[chosen];
            if (a.tag >= 0) { // graph edge arc: record the edge and the entered vertex
                p.edges.push_back(a.tag);
                p.verts.push_back(ix.to_id[a.to / 2]);
            } else if (cur == S) {
                p.verts.push_back(ix.to_id[a.to / 2]);
            }
            cur = a.to;
        }
        out.push_back(std::move(p));
    }
    return out;
}

inline std::vector<Path> disjoint_paths(const SignedGraph& g, VertexId source,
                                        const std::set<VertexId>& targets, int k) {
    return disjoint_paths(g, std::set<VertexId>{source}, targets, k, /*single_source=*/true);
}

} // namespace sgf
