#pragma once

// Structure-finding engine: usable/good generalized cycles, theta subgraphs,
// ear extensions over negative cycles, the fragile good/negative cycle pair,
// and the seed cycle(s) for the decomposition. All searches are exhaustive
// with deterministic tie-breaks; postcondition checkers do the guaranteeing.

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "connectivity.hpp"
#include "cycles.hpp"
#include "graph.hpp"

namespace sgf {

struct GeneralizedCycle {
    enum class Kind { single_vertex, cycle };
    Kind kind = Kind::cycle;
    VertexId vertex = -1;     // when single_vertex
    Cycle cycle;              // when cycle
    std::optional<int> sign;  // undefined for single_vertex

    static GeneralizedCycle single(VertexId v) {
        GeneralizedCycle gc;
        gc.kind = Kind::single_vertex;
        gc.vertex = v;
        return gc;
    }
    static GeneralizedCycle of_cycle(const SignedGraph& g, Cycle c) {
        GeneralizedCycle gc;
        gc.kind = Kind::cycle;
        gc.sign = cycle_sign(g, c);
        gc.cycle = std::move(c);
        return gc;
    }

    bool is_cycle() const { return kind == Kind::cycle; }

    std::vector<VertexId> sorted_verts() const {
        if (kind == Kind::single_vertex) return {vertex};
        return cycle.sorted_verts();
    }
    std::set<VertexId> vertex_set() const {
        auto sv = sorted_verts();
        return std::set<VertexId>(sv.begin(), sv.end());
    }
};

inline bool generalized_cycle_less(const GeneralizedCycle& a, const GeneralizedCycle& b) {
    auto va = a.sorted_verts(), vb = b.sorted_verts();
    if (va != vb) return va < vb;
    if (a.is_cycle() && b.is_cycle()) return a.cycle.sorted_edges() < b.cycle.sorted_edges();
    return a.is_cycle() < b.is_cycle();
}

// Two degree-3 vertices joined by three internally disjoint branches.
struct Theta {
    std::array<VertexId, 2> branch_vertices{};
    std::array<Path, 3> branches{}; // each runs branch_vertices[0] -> branch_vertices[1]
};

namespace detail {

inline Cycle join_paths_to_cycle(const SignedGraph& g, const Path& a, const Path& b) {
    // a and b run x -> y and share exactly their endpoints.
    Cycle c;
    c.verts = a.verts; // x ... y; b's interior follows in reverse
    c.edges = a.edges;
    for (size_t i = b.edges.size(); i-- > 0;) {
        c.edges.push_back(b.edges[i]);
        if (i > 0) c.verts.push_back(b.verts[i]);
    }
    if (!is_valid_cycle(g, c)) throw BugReport("join_paths_to_cycle: paths do not close into a cycle");
    return c;
}

} // namespace detail

inline std::array<Cycle, 3> theta_cycles(const SignedGraph& g, const Theta& t) {
    return {detail::join_paths_to_cycle(g, t.branches[0], t.branches[1]),
            detail::join_paths_to_cycle(g, t.branches[0], t.branches[2]),
            detail::join_paths_to_cycle(g, t.branches[1], t.branches[2])};
}

inline bool is_theta_of(const SignedGraph& g, const Theta& t) {
    std::set<VertexId> interior_seen;
    for (int i = 0; i < 3; ++i) {
        const Path& p = t.branches[i];
        if (p.verts.empty() || p.verts.front() != t.branch_vertices[0] || p.verts.back() != t.branch_vertices[1])
            return false;
        if (p.length() < 1) return false;
        for (size_t j = 0; j + 1 < p.verts.size(); ++j) {
            if (!g.has_edge(p.edges[j])) return false;
            const Edge& e = g.edge(p.edges[j]);
            if (!((e.u == p.verts[j] && e.v == p.verts[j + 1]) || (e.v == p.verts[j] && e.u == p.verts[j + 1])))
                return false;
        }
        for (size_t j = 1; j + 1 < p.verts.size(); ++j)
            if (!interior_seen.insert(p.verts[j]).second) return false;
    }
    if (t.branch_vertices[0] == t.branch_vertices[1]) return false;
    if (interior_seen.count(t.branch_vertices[0]) || interior_seen.count(t.branch_vertices[1])) return false;
    // Two branches of length 1 would be parallel edges; still a theta as long
    // as the edges are distinct.
    std::set<EdgeId> es;
    for (const Path& p : t.branches)
        for (EdgeId e : p.edges)
            if (!es.insert(e).second) return false;
    return true;
}

// Unbalanced iff one of the three contained cycles is negative, equivalently
// not all pairwise branch-cycle signs are +1.
inline bool is_unbalanced_theta(const SignedGraph& g, const Theta& t) {
    for (const Cycle& c : theta_cycles(g, t))
        if (cycle_sign(g, c) == -1) return true;
    return false;
}

enum class CycleClassification { good, usable_negative, neither };

// Degrees are measured in the ambient graph g_prime.
inline CycleClassification classify_generalized_cycle(const SignedGraph& g_prime, const GeneralizedCycle& c) {
    if (!c.is_cycle()) {
        return g_prime.degree(c.vertex) <= 1 ? CycleClassification::good : CycleClassification::neither;
    }
    int deg2 = 0, not_deg2 = 0;
    for (VertexId v : c.cycle.verts)
        (g_prime.degree(v) == 2 ? deg2 : not_deg2)++;
    int s = cycle_sign(g_prime, c.cycle);
    if (s == 1 && deg2 >= 2) return CycleClassification::good;
    if (s == -1 && not_deg2 <= 1) return CycleClassification::usable_negative;
    return CycleClassification::neither;
}

// All usable generalized cycles of g_prime, good candidates first, each group
// ordered by the canonical (vertex set, edge set) order.
inline std::vector<GeneralizedCycle> usable_cycles(const SignedGraph& g_prime) {
    std::vector<GeneralizedCycle> good, usable_neg;
    for (VertexId v : g_prime.vertices())
        if (g_prime.degree(v) <= 1) good.push_back(GeneralizedCycle::single(v));
    for (Cycle& c : enumerate_cycles(g_prime)) {
        GeneralizedCycle gc = GeneralizedCycle::of_cycle(g_prime, std::move(c));
        switch (classify_generalized_cycle(g_prime, gc)) {
            case CycleClassification::good: good.push_back(std::move(gc)); break;
            case CycleClassification::usable_negative: usable_neg.push_back(std::move(gc)); break;
            case CycleClassification::neither: break;
        }
    }
    std::sort(good.begin(), good.end(), generalized_cycle_less);
    std::sort(usable_neg.begin(), usable_neg.end(), generalized_cycle_less);
    good.insert(good.end(), std::make_move_iterator(usable_neg.begin()), std::make_move_iterator(usable_neg.end()));
    return good;
}

// First usable cycle in preference order (good before usable-negative,
// lexicographically smallest vertex set within each group).
inline GeneralizedCycle find_usable_cycle(const SignedGraph& g_prime) {
    if (g_prime.vertex_count() == 0) throw PreconditionError("find_usable_cycle: empty graph");
    std::vector<GeneralizedCycle> cands = usable_cycles(g_prime);
    if (cands.empty())
        throw BugReport("find_usable_cycle: no usable generalized cycle in " + to_debug_string(g_prime));
    return cands.front();
}

namespace detail {

inline void all_paths_dfs(const SignedGraph& g, VertexId target, std::vector<VertexId>& pv,
                          std::vector<EdgeId>& pe, std::set<VertexId>& on, std::vector<Path>& out) {
    VertexId v = pv.back();
    if (v == target) {
        out.push_back(Path{pv, pe});
        return;
    }
    for (EdgeId eid : g.incident(v)) {
        VertexId w = g.edge(eid).other(v);
        if (on.count(w)) continue;
        pv.push_back(w);
        pe.push_back(eid);
        on.insert(w);
        all_paths_dfs(g, target, pv, pe, on, out);
        on.erase(w);
        pe.pop_back();
        pv.pop_back();
    }
}

inline std::vector<Path> all_simple_paths(const SignedGraph& g, VertexId a, VertexId b) {
    std::vector<VertexId> pv{a};
    std::vector<EdgeId> pe;
    std::set<VertexId> on{a};
    std::vector<Path> out;
    all_paths_dfs(g, b, pv, pe, on, out);
    std::sort(out.begin(), out.end(), [](const Path& x, const Path& y) {
        if (x.length() != y.length()) return x.length() < y.length();
        if (x.verts != y.verts) return x.verts < y.verts;
        return x.edges < y.edges;
    });
    return out;
}

inline bool internally_disjoint(const Path& a, const Path& b) {
    std::set<VertexId> ia(a.verts.begin() + 1, a.verts.end() - 1);
    for (size_t j = 1; j + 1 < b.verts.size(); ++j)
        if (ia.count(b.verts[j])) return false;
    std::set<EdgeId> ea(a.edges.begin(), a.edges.end());
    for (EdgeId e : b.edges)
        if (ea.count(e)) return false;
    return true;
}

// Suppression to the base graph: every degree-2 chain collapses to one edge.
// Returns the base graph plus the per-base-edge subdivision counts, or
// nullopt when h is not a subdivision of a simple graph of min degree 3.
struct SuppressedBase {
    SignedGraph base;
    std::vector<int> subdivisions_per_edge;
};

inline std::optional<SuppressedBase> suppress_degree2(const SignedGraph& h) {
    std::vector<VertexId> branch;
    for (VertexId v : h.vertices()) {
        int d = h.degree(v);
        if (d == 2) continue;
        if (d != 3) return std::nullopt;
        branch.push_back(v);
    }
    if (branch.empty()) return std::nullopt; // bare cycles are not subdivisions of 3-connected graphs
    std::vector<Edge> base_edges;
    std::vector<int> counts;
    std::set<std::pair<VertexId, EdgeId>> used; // (branch vertex, first chain edge)
    EdgeId next = 0;
    for (VertexId v : branch) {
        for (EdgeId start : h.incident(v)) {
            if (used.count({v, start})) continue;
            // walk the chain
            VertexId prev = v;
            EdgeId cur = start;
            int interior = 0;
            VertexId w = h.edge(cur).other(prev);
            while (h.degree(w) == 2) {
                ++interior;
                EdgeId nxt = -1;
                for (EdgeId cand : h.incident(w))
                    if (cand != cur) nxt = cand;
                prev = w;
                cur = nxt;
                w = h.edge(cur).other(prev);
            }
            used.insert({v, start});
            used.insert({w, cur});
            if (w == v) return std::nullopt; // chain closes on itself: not a subdivision
            base_edges.push_back(Edge{next++, v, w, +1});
            counts.push_back(interior);
        }
    }
    SuppressedBase out{SignedGraph(branch, std::move(base_edges)), std::move(counts)};
    return out;
}

} // namespace detail

// A theta of h in which either every branch carries a degree-2 vertex, or
// two branches carry at least two degree-2 vertices each. Hypotheses: h is a
// subdivision of a simple 3-connected graph with k >= 4 subdivision vertices
// and no base edge subdivided more than k-2 times.
inline Theta find_theta_with_degree2(const SignedGraph& h) {
    std::vector<VertexId> v2;
    for (VertexId v : h.vertices())
        if (h.degree(v) == 2) v2.push_back(v);
    const int k = static_cast<int>(v2.size());
    if (k < 4) throw PreconditionError("find_theta_with_degree2: fewer than 4 subdivision vertices");
    auto sup = detail::suppress_degree2(h);
    if (!sup) throw PreconditionError("find_theta_with_degree2: not a subdivision of a graph of min degree 3");
    std::set<std::pair<VertexId, VertexId>> seen_pairs;
    for (const Edge& e : sup->base.edges()) {
        if (!seen_pairs.insert(std::minmax(e.u, e.v)).second)
            throw PreconditionError("find_theta_with_degree2: base graph is not simple");
    }
    if (sup->base.vertex_count() < 4 || vertex_connectivity(sup->base) < 3)
        throw PreconditionError("find_theta_with_degree2: base graph is not 3-connected");
    for (int c : sup->subdivisions_per_edge)
        if (c > k - 2)
            throw PreconditionError("find_theta_with_degree2: an edge is subdivided more than k-2 times");

    std::set<VertexId> v2set(v2.begin(), v2.end());
    auto deg2_on = [&](const Path& p) {
        int c = 0;
        for (VertexId v : p.verts)
            if (v2set.count(v)) ++c;
        return c;
    };
    std::vector<VertexId> branch;
    for (VertexId v : h.vertices())
        if (h.degree(v) == 3) branch.push_back(v);
    for (size_t i = 0; i < branch.size(); ++i)
        for (size_t j = i + 1; j < branch.size(); ++j) {
            std::vector<Path> paths = detail::all_simple_paths(h, branch[i], branch[j]);
            for (size_t a = 0; a < paths.size(); ++a)
                for (size_t b = a + 1; b < paths.size(); ++b) {
                    if (!detail::internally_disjoint(paths[a], paths[b])) continue;
                    for (size_t c = b + 1; c < paths.size(); ++c) {
                        if (!detail::internally_disjoint(paths[a], paths[c]) ||
                            !detail::internally_disjoint(paths[b], paths[c]))
                            continue;
                        Theta t;
                        t.branch_vertices = {branch[i], branch[j]};
                        t.branches = {paths[a], paths[b], paths[c]};
                        int d0 = deg2_on(paths[a]), d1 = deg2_on(paths[b]), d2 = deg2_on(paths[c]);
                        bool every = d0 >= 1 && d1 >= 1 && d2 >= 1;
                        bool two_twice = (d0 >= 2) + (d1 >= 2) + (d2 >= 2) >= 2;
                        if (every || two_twice) return t;
                    }
                }
        }
    throw BugReport("find_theta_with_degree2: hypotheses hold but no qualifying theta in " + to_debug_string(h));
}

// Exhaustive search over (negative cycle, ear) pairs; nullopt iff no block
// is unbalanced beyond a bare cycle.
inline std::optional<Theta> find_unbalanced_theta(const SignedGraph& g) {
    if (!has_unbalanced_theta(g)) return std::nullopt;
    for (const Cycle& n : negative_cycles(g)) {
        std::set<EdgeId> ne(n.edges.begin(), n.edges.end());
        std::set<VertexId> nv(n.verts.begin(), n.verts.end());
        for (VertexId a : n.sorted_verts())
            for (VertexId b : n.sorted_verts()) {
                if (a >= b) continue;
                std::set<VertexId> avoid = nv;
                avoid.erase(a);
                avoid.erase(b);
                auto ear = bfs_path(g, {a}, {b}, avoid, ne);
                if (!ear) continue;
                // Split n into its two a..b arcs.
                size_t ia = 0, ib = 0;
                for (size_t i = 0; i < n.verts.size(); ++i) {
                    if (n.verts[i] == a) ia = i;
                    if (n.verts[i] == b) ib = i;
                }
                const size_t L = n.verts.size();
                Path arc1, arc2;
                for (size_t i = ia;; i = (i + 1) % L) {
                    arc1.verts.push_back(n.verts[i]);
                    if (i == ib) break;
                    arc1.edges.push_back(n.edges[i]);
                }
                for (size_t i = ib;; i = (i + 1) % L) {
                    arc2.verts.push_back(n.verts[i]);
                    if (i == ia) break;
                    arc2.edges.push_back(n.edges[i]);
                }
                std::reverse(arc2.verts.begin(), arc2.verts.end());
                std::reverse(arc2.edges.begin(), arc2.edges.end());
                Theta t;
                t.branch_vertices = {a, b};
                t.branches = {arc1, arc2, *ear};
                if (!is_theta_of(g, t)) throw BugReport("find_unbalanced_theta: assembled subgraph is not a theta");
                if (!is_unbalanced_theta(g, t)) throw BugReport("find_unbalanced_theta: theta over a negative cycle not unbalanced");
                return t;
            }
    }
    throw BugReport("find_unbalanced_theta: presence test positive but no ear found in " + to_debug_string(g));
}

// If g is unbalanced while h and g - E(h) are balanced, produce paths
// P in h and Q in g - E(h) closing into a negative cycle; nullopt when g is
// balanced. h is passed as a subgraph of g (same ids).
inline std::optional<std::pair<Path, Path>> extend_to_negative_cycle(const SignedGraph& g, const SignedGraph& h) {
    for (const Edge& e : h.edges()) {
        const Edge& ge = g.edge(e.id);
        if (std::minmax(ge.u, ge.v) != std::minmax(e.u, e.v) || ge.sign != e.sign)
            throw PreconditionError("extend_to_negative_cycle: h is not a subgraph of g");
    }
    if (!h.connected()) throw PreconditionError("extend_to_negative_cycle: h is not connected");
    if (!is_balanced(h).balanced()) throw PreconditionError("extend_to_negative_cycle: h is not balanced");
    std::set<EdgeId> he;
    for (const Edge& e : h.edges()) he.insert(e.id);
    SignedGraph rest = g.delete_edges(he);
    BalanceCertificate rest_cert = is_balanced(rest);
    if (!rest_cert.balanced()) throw PreconditionError("extend_to_negative_cycle: g - E(h) is not balanced");

    // Switch so every non-h edge is positive, then split V(h) by the balance
    // labelling of h under the switched signature.
    std::set<VertexId> sw;
    for (auto& [v, s] : *rest_cert.bipartition)
        if (s == 1) sw.insert(v);
    SignedGraph gs = switch_signature(g, sw);
    std::set<VertexId> hverts;
    for (const Edge& e : h.edges()) {
        hverts.insert(e.u);
        hverts.insert(e.v);
    }
    for (VertexId v : h.vertices()) hverts.insert(v);
    SignedGraph hs = gs.induced(hverts).edge_subgraph(he);
    BalanceCertificate hcert = is_balanced(hs);
    if (!hcert.balanced()) throw BugReport("extend_to_negative_cycle: switched h lost balance");
    std::set<VertexId> u0, u1;
    for (auto& [v, s] : *hcert.bipartition)
        (s == 0 ? u0 : u1).insert(v);
    if (u0.empty() || u1.empty()) {
        if (!is_balanced(g).balanced())
            throw BugReport("extend_to_negative_cycle: one-sided labelling on an unbalanced graph");
        return std::nullopt;
    }
    SignedGraph rest_s = gs.delete_edges(he);
    auto q = bfs_path(rest_s, u0, u1);
    if (!q) {
        if (!is_balanced(g).balanced())
            throw BugReport("extend_to_negative_cycle: no crossing path in an unbalanced graph");
        return std::nullopt;
    }
    auto p = bfs_path(hs, {q->verts.front()}, {q->verts.back()});
    if (!p) throw BugReport("extend_to_negative_cycle: h path missing between ear ends");
    Cycle c = detail::join_paths_to_cycle(g, *p, *q);
    if (cycle_sign(g, c) != -1) throw BugReport("extend_to_negative_cycle: assembled cycle is positive");
    return std::make_pair(*p, *q);
}

// The fragile pair: a good cycle C0 and a negative cycle C1 whose edge
// removals both destroy every unbalanced theta and leave identical
// negative-cycle sets. First pair in scan order that passes the checker.
inline std::pair<GeneralizedCycle, GeneralizedCycle> find_fragile_pair(const SignedGraph& g) {
    if (vertex_connectivity(g) < 2) throw PreconditionError("find_fragile_pair: graph is not 2-connected");
    if (!has_unbalanced_theta(g)) throw PreconditionError("find_fragile_pair: no unbalanced theta");

    std::vector<Cycle> all = enumerate_cycles(g);
    std::vector<Cycle> goods, negs;
    for (Cycle& c : all) {
        GeneralizedCycle gc = GeneralizedCycle::of_cycle(g, c);
        if (classify_generalized_cycle(g, gc) == CycleClassification::good) goods.push_back(c);
        if (cycle_sign(g, c) == -1) negs.push_back(c);
    }
    for (const Cycle& c : goods) {
        std::set<EdgeId> ce(c.edges.begin(), c.edges.end());
        if (has_unbalanced_theta(g.delete_edges(ce)))
            throw PreconditionError("find_fragile_pair: a good cycle preserves an unbalanced theta under edge deletion");
    }

    auto neg_cycle_key = [&](const SignedGraph& sub) {
        std::set<std::vector<EdgeId>> key;
        for (const Cycle& n : negative_cycles(sub)) key.insert(n.sorted_edges());
        return key;
    };
    for (const Cycle& c0 : goods) {
        std::set<EdgeId> e0(c0.edges.begin(), c0.edges.end());
        auto negs0 = neg_cycle_key(g.delete_edges(e0));
        for (const Cycle& c1 : negs) {
            std::set<EdgeId> e1(c1.edges.begin(), c1.edges.end());
            SignedGraph g1 = g.delete_edges(e1);
            if (has_unbalanced_theta(g1)) continue;
            if (neg_cycle_key(g1) != negs0) continue;
            return {GeneralizedCycle::of_cycle(g, c0), GeneralizedCycle::of_cycle(g, c1)};
        }
    }
    throw BugReport("find_fragile_pair: no pair passes the checker in " + to_debug_string(g));
}

// Seed of the decomposition: either two vertex-disjoint negative cycles
// covering every vertex, or a single negative cycle whose vertex deletion
// leaves an unbalanced theta.
struct InitialSpecial {
    enum class Kind { spanning_pair, first_cycle } kind;
    Cycle c1;
    std::optional<Cycle> c2;
};

inline InitialSpecial initial_special(const SignedGraph& g) {
    if (vertex_connectivity(g) < 3) throw PreconditionError("initial_special: graph is not 3-connected");
    std::vector<Cycle> negs = negative_cycles(g);
    bool any_disjoint = false;
    const size_t n = g.vertices().size();
    for (size_t i = 0; i < negs.size(); ++i) {
        std::set<VertexId> vi(negs[i].verts.begin(), negs[i].verts.end());
        for (size_t j = i + 1; j < negs.size(); ++j) {
            bool disjoint = true;
            for (VertexId v : negs[j].verts)
                if (vi.count(v)) {
                    disjoint = false;
                    break;
                }
            if (!disjoint) continue;
            any_disjoint = true;
            if (vi.size() + negs[j].verts.size() == n)
                return InitialSpecial{InitialSpecial::Kind::spanning_pair, negs[i], negs[j]};
        }
    }
    if (!any_disjoint)
        throw PreconditionError("initial_special: no two vertex-disjoint negative cycles");
    for (const Cycle& c : negs) {
        std::set<VertexId> cv(c.verts.begin(), c.verts.end());
        if (has_unbalanced_theta(g.delete_vertices(cv)))
            return InitialSpecial{InitialSpecial::Kind::first_cycle, c, std::nullopt};
    }
    throw BugReport("initial_special: disjoint negative cycles exist but no seed found in " + to_debug_string(g));
}

} // namespace sgf
