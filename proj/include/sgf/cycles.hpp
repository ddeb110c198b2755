#pragma once

// Cycle-space utilities at desk scale: exhaustive simple-cycle enumeration
// in canonical order, block decomposition, and the balance-based test for
// the presence of an unbalanced theta.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "graph.hpp"

namespace sgf {

// Canonical order on cycles: lexicographic on the sorted vertex list, then
// on the sorted edge list. Used for all deterministic tie-breaks.
inline bool cycle_less(const Cycle& a, const Cycle& b) {
    auto va = a.sorted_verts(), vb = b.sorted_verts();
    if (va != vb) return va < vb;
    return a.sorted_edges() < b.sorted_edges();
}

namespace detail {

inline void cycle_dfs(const SignedGraph& g, VertexId start, std::vector<VertexId>& pverts,
                      std::vector<EdgeId>& pedges, std::set<VertexId>& on_path,
                      std::vector<Cycle>& out) {
    VertexId v = pverts.back();
    for (EdgeId eid : g.incident(v)) {
        const Edge& e = g.edge(eid);
        VertexId w = e.other(v);
        if (w == start) {
            if (pedges.size() >= 2 && eid != pedges.front() && pverts[1] < pverts.back()) {
                Cycle c;
                c.verts = pverts;
                c.edges = pedges;
                c.edges.push_back(eid);
                out.push_back(std::move(c));
            }
            continue;
        }
        if (w < start || on_path.count(w)) continue;
        pverts.push_back(w);
        pedges.push_back(eid);
        on_path.insert(w);
        cycle_dfs(g, start, pverts, pedges, on_path, out);
        on_path.erase(w);
        pedges.pop_back();
        pverts.pop_back();
    }
}

} // namespace detail

// All simple cycles (length >= 2), each exactly once, in canonical order.
inline std::vector<Cycle> enumerate_cycles(const SignedGraph& g) {
    std::vector<Cycle> out;
    // Digons from parallel edge pairs.
    for (size_t i = 0; i < g.edges().size(); ++i)
        for (size_t j = i + 1; j < g.edges().size(); ++j) {
            const Edge &a = g.edges()[i], &b = g.edges()[j];
            if (std::minmax(a.u, a.v) == std::minmax(b.u, b.v)) {
                Cycle c;
                c.verts = {std::min(a.u, a.v), std::max(a.u, a.v)};
                c.edges = {a.id, b.id};
                out.push_back(std::move(c));
            }
        }
    for (VertexId s : g.vertices()) {
        std::vector<VertexId> pverts{s};
        std::vector<EdgeId> pedges;
        std::set<VertexId> on_path{s};
        // Longer cycles are found from their minimum vertex; the second
        // vertex smaller than the last fixes the traversal direction.
        for (EdgeId eid : g.incident(s)) {
            const Edge& e = g.edge(eid);
            VertexId w = e.other(s);
            if (w < s) continue;
            pverts.push_back(w);
            pedges.push_back(eid);
            on_path.insert(w);
            detail::cycle_dfs(g, s, pverts, pedges, on_path, out);
            on_path.erase(w);
            pedges.pop_back();
            pverts.pop_back();
        }
    }
    std::sort(out.begin(), out.end(), cycle_less);
    return out;
}

inline std::vector<Cycle> negative_cycles(const SignedGraph& g) {
    std::vector<Cycle> out;
    for (Cycle& c : enumerate_cycles(g))
        if (cycle_sign(g, c) == -1) out.push_back(std::move(c));
    return out;
}

// Chordless: the subgraph induced on the cycle's vertices has no extra edge.
inline bool is_induced_cycle(const SignedGraph& g, const Cycle& c) {
    std::set<VertexId> vs(c.verts.begin(), c.verts.end());
    int count = 0;
    for (const Edge& e : g.edges())
        if (vs.count(e.u) && vs.count(e.v)) ++count;
    return count == c.length();
}

inline std::vector<Cycle> chordless_cycles(const SignedGraph& g) {
    std::vector<Cycle> out;
    for (Cycle& c : enumerate_cycles(g))
        if (is_induced_cycle(g, c)) out.push_back(std::move(c));
    return out;
}

inline std::vector<std::set<VertexId>> components(const SignedGraph& g) {
    std::vector<std::set<VertexId>> comps;
    std::set<VertexId> seen;
    for (VertexId root : g.vertices()) {
        if (seen.count(root)) continue;
        std::set<VertexId> comp{root};
        seen.insert(root);
        std::vector<VertexId> stack{root};
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            for (EdgeId eid : g.incident(v)) {
                VertexId w = g.edge(eid).other(v);
                if (seen.insert(w).second) {
                    comp.insert(w);
                    stack.push_back(w);
                }
            }
        }
        comps.push_back(std::move(comp));
    }
    return comps;
}

// Biconnected components as edge sets (bridges come out as single-edge
// blocks). Iterative lowpoint computation; parallel edges are distinct, so a
// doubled edge forms a 2-edge block rather than a bridge.
inline std::vector<std::set<EdgeId>> blocks(const SignedGraph& g) {
    std::vector<std::set<EdgeId>> out;
    std::map<VertexId, int> num, low;
    std::vector<EdgeId> estack;
    int counter = 0;

    struct Frame {
        VertexId v;
        EdgeId in_edge;
        size_t next = 0;
    };

    for (VertexId root : g.vertices()) {
        if (num.count(root)) continue;
        std::vector<Frame> stack;
        stack.push_back({root, -1});
        num[root] = low[root] = counter++;
        while (!stack.empty()) {
            Frame& fr = stack.back();
            const auto& inc = g.incident(fr.v);
            if (fr.next < inc.size()) {
                EdgeId eid = inc[fr.next++];
                if (eid == fr.in_edge) continue;
                const Edge& e = g.edge(eid);
                VertexId w = e.other(fr.v);
                if (!num.count(w)) {
                    estack.push_back(eid);
                    num[w] = low[w] = counter++;
                    stack.push_back({w, eid});
                } else if (num[w] < num[fr.v]) {
                    estack.push_back(eid);
                    low[fr.v] = std::min(low[fr.v], num[w]);
                }
            } else {
                VertexId v = fr.v;
                EdgeId in_edge = fr.in_edge;
                stack.pop_back();
                if (stack.empty()) continue;
                VertexId parent = stack.back().v;
                low[parent] = std::min(low[parent], low[v]);
                if (low[v] >= num[parent]) {
                    std::set<EdgeId> block;
                    while (!estack.empty()) {
                        EdgeId top = estack.back();
                        estack.pop_back();
                        block.insert(top);
                        if (top == in_edge) break;
                    }
                    if (!block.empty()) out.push_back(std::move(block));
                }
            }
        }
    }
    return out;
}

inline std::set<EdgeId> bridges(const SignedGraph& g) {
    std::set<EdgeId> out;
    for (const auto& b : blocks(g))
        if (b.size() == 1) out.insert(*b.begin());
    return out;
}

// A block that is unbalanced and not a bare cycle carries an ear over a
// negative cycle, hence an unbalanced theta; conversely a theta lives inside
// one block. So the presence test reduces to a per-block check.
inline bool has_unbalanced_theta(const SignedGraph& g) {
    for (const auto& be : blocks(g)) {
        if (be.size() <= 1) continue;
        std::set<VertexId> vs;
        for (EdgeId eid : be) {
            vs.insert(g.edge(eid).u);
            vs.insert(g.edge(eid).v);
        }
        if (be.size() == vs.size()) continue; // bare cycle block
        SignedGraph sub = g.induced(vs).edge_subgraph(be);
        if (!is_balanced(sub).balanced()) return true;
    }
    return false;
}

// Shortest path by BFS between vertex sets, avoiding the given vertices and
// edges; deterministic (edge ids scanned ascending). Endpoints of the path
// may lie in `avoid_vertices` only if they are the source/target themselves.
inline std::optional<Path> bfs_path(const SignedGraph& g, const std::set<VertexId>& from,
                                    const std::set<VertexId>& to,
                                    const std::set<VertexId>& avoid_vertices = {},
                                    const std::set<EdgeId>& avoid_edges = {}) {
    std::map<VertexId, std::pair<VertexId, EdgeId>> parent;
    std::vector<VertexId> queue;
    for (VertexId s : from) {
        if (!g.has_vertex(s) || avoid_vertices.count(s)) continue;
        if (!parent.count(s)) {
            parent[s] = {-1, -1};
            queue.push_back(s);
        }
    }
    std::sort(queue.begin(), queue.end());
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        VertexId v = queue[qi];
        if (to.count(v)) {
            Path p;
            VertexId cur = v;
            while (cur != -1) {
                p.verts.push_back(cur);
                auto [pv, pe] = parent.at(cur);
                if (pe != -1) p.edges.push_back(pe);
                cur = pv;
            }
            std::reverse(p.verts.begin(), p.verts.end());
            std::reverse(p.edges.begin(), p.edges.end());
            return p;
        }
        for (EdgeId eid : g.incident(v)) {
            if (avoid_edges.count(eid)) continue;
            VertexId w = g.edge(eid).other(v);
            if (avoid_vertices.count(w) && !to.count(w)) continue;
            if (!parent.count(w)) {
                parent[w] = {v, eid};
                queue.push_back(w);
            }
        }
    }
    return std::nullopt;
}

} // namespace sgf
