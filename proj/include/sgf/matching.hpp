#pragma once

// Maximum matching in general graphs (augmenting paths with blossom
// contraction), the Berge-Tutte witness, the auxiliary matching graph built
// from a Z3-preflow, and the hypothesis checker for the perfect-matching
// lemma on subdivided cubic graphs.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "graph.hpp"

namespace sgf {

// Unsigned multigraph with stable ids; no degree restriction.
struct Multigraph {
    struct MEdge {
        EdgeId id;
        VertexId u, v;
        VertexId other(VertexId w) const { return w == u ? v : u; }
    };
    std::vector<VertexId> verts; // sorted
    std::vector<MEdge> edges;    // sorted by id

    Multigraph() = default;
    Multigraph(std::vector<VertexId> vs, std::vector<MEdge> es) : verts(std::move(vs)), edges(std::move(es)) {
        std::sort(verts.begin(), verts.end());
        verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
        std::sort(edges.begin(), edges.end(), [](const MEdge& a, const MEdge& b) { return a.id < b.id; });
    }
    static Multigraph of(const SignedGraph& g) {
        std::vector<MEdge> es;
        for (const Edge& e : g.edges()) es.push_back({e.id, e.u, e.v});
        return Multigraph(g.vertices(), std::move(es));
    }
    int vertex_count() const { return static_cast<int>(verts.size()); }
    const MEdge& edge(EdgeId id) const {
        auto it = std::lower_bound(edges.begin(), edges.end(), id,
                                   [](const MEdge& a, EdgeId x) { return a.id < x; });
        if (it == edges.end() || it->id != id) throw DomainError("multigraph: no edge " + std::to_string(id));
        return *it;
    }
    int degree(VertexId v) const {
        int d = 0;
        for (const MEdge& e : edges) d += (e.u == v) + (e.v == v);
        return d;
    }
};

namespace detail {

struct DenseGraph {
    std::map<VertexId, int> idx;
    std::vector<VertexId> ids;
    std::vector<std::vector<int>> adj; // neighbor dense indices, ascending
    explicit DenseGraph(const Multigraph& h) {
        for (VertexId v : h.verts) {
            idx[v] = static_cast<int>(ids.size());
            ids.push_back(v);
        }
        adj.resize(ids.size());
        for (const auto& e : h.edges) {
            adj[idx.at(e.u)].push_back(idx.at(e.v));
            adj[idx.at(e.v)].push_back(idx.at(e.u));
        }
        for (auto& a : adj) {
            std::sort(a.begin(), a.end());
            a.erase(std::unique(a.begin(), a.end()), a.end());
        }
    }
};

// Edmonds' blossom algorithm over dense indices; returns mate[] (-1 free).
inline std::vector<int> blossom_mates(const DenseGraph& dg) {
    const int n = static_cast<int>(dg.ids.size());
    std::vector<int> match(n, -1), p(n, -1), base(n);
    std::vector<bool> used(n, false), blossom(n, false);

    auto lca = [&](int a, int b) {
        std::vector<bool> seen(n, false);
        int cur = a;
        while (true) {
            cur = base[cur];
            seen[cur] = true;
            if (match[cur] == -1) break;
            cur = p[match[cur]];
        }
        cur = b;
        while (!seen[base[cur]]) cur = p[match[cur]];
        return base[cur];
    };
    auto mark_path = [&](int v, int b, int child) {
        while (base[v] != b) {
            blossom[base[v]] = true;
            blossom[base[match[v]]] = true;
            p[v] = child;
            child = match[v];
            v = p[match[v]];
        }
    };
    auto find_path = [&](int root) -> int {
        std::fill(used.begin(), used.end(), false);
        std::fill(p.begin(), p.end(), -1);
        for (int i = 0; i < n; ++i) base[i] = i;
        used[root] = true;
        std::vector<int> q{root};
        for (size_t qi = 0; qi < q.size(); ++qi) {
            int v = q[qi];
            for (int to : dg.adj[v]) {
                if (base[v] == base[to] || match[v] == to) continue;
                if (to == root || (match[to] != -1 && p[match[to]] != -1)) {
                    int curbase = lca(v, to);
                    std::fill(blossom.begin(), blossom.end(), false);
                    mark_path(v, curbase, to);
                    mark_path(to, curbase, v);
                    for (int i = 0; i < n; ++i)
                        if (blossom[base[i]]) {
                            base[i] = curbase;
                            if (!used[i]) {
                                used[i] = true;
                                q.push_back(i);
                            }
                        }
                } else if (p[to] == -1) {
                    p[to] = v;
                    if (match[to] == -1) return to;
                    used[match[to]] = true;
                    q.push_back(match[to]);
                }
            }
        }
        return -1;
    };

    for (int v = 0; v < n; ++v) {
        if (match[v] != -1) continue;
        int u = find_path(v);
        while (u != -1) { // flip the augmenting path ending at u
            int pv = p[u], ppv = match[pv];
            match[u] = pv;
            match[pv] = u;
            u = ppv;
        }
    }
    return match;
}

} // namespace detail

// Maximum-cardinality matching as a set of edge ids (parallel edges resolved
// to the least id joining a matched pair).
inline std::vector<EdgeId> maximum_matching(const Multigraph& h) {
    detail::DenseGraph dg(h);
    std::vector<int> mate = detail::blossom_mates(dg);
    std::vector<EdgeId> out;
    for (int i = 0; i < static_cast<int>(mate.size()); ++i) {
        if (mate[i] <= i) continue;
        VertexId a = dg.ids[i], b = dg.ids[mate[i]];
        EdgeId best = -1;
        for (const auto& e : h.edges)
            if (std::minmax(e.u, e.v) == std::minmax(a, b)) {
                best = e.id;
                break;
            }
        if (best == -1) throw BugReport("maximum_matching: matched pair without an edge");
        out.push_back(best);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline bool is_perfect_matching(const Multigraph& h, const std::vector<EdgeId>& m) {
    std::set<VertexId> covered;
    for (EdgeId id : m) {
        const auto& e = h.edge(id);
        if (!covered.insert(e.u).second || !covered.insert(e.v).second) return false;
    }
    return static_cast<int>(covered.size()) == h.vertex_count();
}

namespace detail {

inline int odd_components(const Multigraph& h, const std::set<VertexId>& removed) {
    std::map<VertexId, int> comp;
    int nc = 0;
    for (VertexId root : h.verts) {
        if (removed.count(root) || comp.count(root)) continue;
        comp[root] = nc;
        std::vector<VertexId> stack{root};
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            for (const auto& e : h.edges) {
                VertexId w;
                if (e.u == v) w = e.v;
                else if (e.v == v) w = e.u;
                else continue;
                if (removed.count(w) || comp.count(w)) continue;
                comp[w] = nc;
                stack.push_back(w);
            }
        }
        ++nc;
    }
    std::vector<int> sizes(nc, 0);
    for (auto& [v, c] : comp) sizes[c]++;
    int odd = 0;
    for (int s : sizes) odd += s % 2;
    return odd;
}

} // namespace detail

// When no perfect matching exists, a set X with |X| < odd(h - X); built from
// the exposable vertices via Gallai-Edmonds (X = neighbours of D outside D).
inline std::optional<std::set<VertexId>> tutte_witness(const Multigraph& h) {
    if (h.vertex_count() % 2 == 0) {
        auto m = maximum_matching(h);
        if (is_perfect_matching(h, m)) return std::nullopt;
    }
    size_t full = maximum_matching(h).size();
    std::set<VertexId> d;
    for (VertexId v : h.verts) {
        std::vector<Multigraph::MEdge> es;
        for (const auto& e : h.edges)
            if (e.u != v && e.v != v) es.push_back(e);
        std::vector<VertexId> vs;
        for (VertexId w : h.verts)
            if (w != v) vs.push_back(w);
        Multigraph sub(std::move(vs), std::move(es));
        if (maximum_matching(sub).size() == full) d.insert(v); // v exposable
    }
    std::set<VertexId> a;
    for (const auto& e : h.edges) {
        if (d.count(e.u) && !d.count(e.v)) a.insert(e.v);
        if (d.count(e.v) && !d.count(e.u)) a.insert(e.u);
    }
    if (static_cast<int>(a.size()) >= detail::odd_components(h, a))
        throw BugReport("tutte_witness: Gallai-Edmonds set fails the deficiency inequality");
    return a;
}

// ---------------------------------------------------------------------------
// Auxiliary graph
// ---------------------------------------------------------------------------

// Origin of an auxiliary-graph edge.
struct HEdgeOrigin {
    enum class Kind { graph_edge, gadget_new, w_stub } kind = Kind::graph_edge;
    EdgeId source = -1; // graph edge id, or the zero edge id for gadget_new; -1 for w stubs
};

// The unsigned matching graph derived from (g, phi), with enough bookkeeping
// to decode a perfect matching back into an integer lift: per-edge part
// lists, gadget records, the w-side attachments at degree-2 vertices, and
// the normalisation (switch set + flipped edges + working orientation).
struct AuxiliaryGraph {
    Multigraph h;
    struct Gadget {
        EdgeId zero_edge;
        EdgeId new_edge; // e' of the 4-cycle
        VertexId s1, s2;
    };
    std::vector<Gadget> gadgets;            // ascending zero edge id
    std::map<EdgeId, HEdgeOrigin> edge_origin;

    struct PartsInfo {
        std::vector<EdgeId> parts; // h edges from the u end to the v end
        bool cut_at_u = false;     // true when a gadget subdivided this end
        bool cut_at_v = false;
    };
    std::map<EdgeId, PartsInfo> parts; // per edge of g

    struct WSide {
        VertexId x = -1;
        int tau_at_x = 0;  // direction of the w-edge half at x
        bool subdivided = false;
        VertexId s = -1;
        EdgeId part = -1;  // h edge x-s when subdivided
    };
    std::map<VertexId, WSide> w_sides; // per degree-2 vertex of g

    std::set<VertexId> switch_set;  // made every zero edge positive
    std::set<EdgeId> flipped;       // edges whose value 2 became 1
    Orientation t_work;             // orientation after switch + flips
    EdgeFunction phi_work;          // range {0,1}
};

// Builds the auxiliary graph of (g, t, phi): switch zero edges positive,
// flip value-2 edges to 1, attach a virtual apex edge at every degree-2
// vertex, install one 4-cycle gadget per zero edge (subdividing the outgoing
// positive half at one end and the incoming negative half at the other), and
// drop the apex.
inline AuxiliaryGraph build_auxiliary_graph(const SignedGraph& g, const Orientation& t,
                                            const EdgeFunction& phi) {
    if (phi.tag != Mod::mod3) throw PreconditionError("build_auxiliary_graph: phi must be mod-3");
    for (VertexId v : g.vertices())
        if (g.degree(v) != 2 && g.degree(v) != 3)
            throw PreconditionError("build_auxiliary_graph: vertex " + std::to_string(v) +
                                    " has degree " + std::to_string(g.degree(v)));
    if (!valid_orientation(g, t)) throw PreconditionError("build_auxiliary_graph: invalid orientation");

    AuxiliaryGraph aux;

    // Z must be a matching; make its edges positive by switching one end each.
    std::set<VertexId> zero_ends;
    std::vector<EdgeId> zero_edges;
    for (const Edge& e : g.edges()) {
        if (phi.at(e.id) != 0) continue;
        zero_edges.push_back(e.id);
        if (!zero_ends.insert(e.u).second || !zero_ends.insert(e.v).second)
            throw PreconditionError("build_auxiliary_graph: zero set is not a matching");
        if (e.sign == -1) aux.switch_set.insert(std::min(e.u, e.v));
    }
    SignedGraph gw = switch_signature(g, aux.switch_set);
    Orientation tw = t;
    for (const Edge& e : g.edges()) {
        auto& pr = tw.tau.at(e.id);
        if (aux.switch_set.count(e.u)) pr.first = -pr.first;
        if (aux.switch_set.count(e.v)) pr.second = -pr.second;
    }
    EdgeFunction phiw = phi;
    for (const Edge& e : g.edges()) {
        if (phiw.at(e.id) == 2) {
            auto [t2, f2] = flip_edge(gw, tw, phiw, e.id);
            tw = std::move(t2);
            phiw = std::move(f2);
            aux.flipped.insert(e.id);
        }
    }
    aux.t_work = tw;
    aux.phi_work = phiw;

    // Virtual apex edges close the boundary at degree-2 vertices.
    for (VertexId v : g.vertices()) {
        int d = boundary_at(gw, tw, phiw, v);
        if (g.degree(v) == 3) {
            if (d != 0)
                throw PreconditionError("build_auxiliary_graph: phi is not a preflow (deg-3 vertex " +
                                        std::to_string(v) + " has boundary " + std::to_string(d) + ")");
            continue;
        }
        if (d == 0)
            throw PreconditionError("build_auxiliary_graph: phi is not a preflow (deg-2 vertex " +
                                    std::to_string(v) + " has zero boundary)");
        AuxiliaryGraph::WSide ws;
        ws.x = v;
        ws.tau_at_x = (d == 1) ? -1 : +1; // cancels the residue
        aux.w_sides[v] = ws;
    }

    // H starts as a copy of g (same edge ids); parts grow as gadgets subdivide.
    std::map<EdgeId, std::pair<VertexId, VertexId>> hedges;
    for (const Edge& e : g.edges()) {
        hedges[e.id] = {e.u, e.v};
        aux.parts[e.id] = {{e.id}, false, false};
        aux.edge_origin[e.id] = {HEdgeOrigin::Kind::graph_edge, e.id};
    }
    VertexId next_vertex = g.max_vertex_id() + 1;
    EdgeId next_edge = g.max_edge_id() + 1;
    std::set<VertexId> extra_vertices;

    // Subdivide, at vertex `at`, the attachment with the given direction sign:
    // either a graph edge's terminal part or the w-edge. Returns the new
    // degree-2 vertex of H.
    auto subdivide_slot = [&](VertexId at, int want_tau, EdgeId avoid_edge) -> VertexId {
        std::vector<std::pair<int, EdgeId>> slots; // (tau at `at`, g edge id), -1 edge id for w
        for (EdgeId eid : gw.incident(at)) {
            if (eid == avoid_edge) continue;
            slots.push_back({tw.at(gw.edge(eid), at), eid});
        }
        if (aux.w_sides.count(at)) slots.push_back({aux.w_sides.at(at).tau_at_x, -1});
        if (slots.size() != 2 || slots[0].first * slots[1].first != -1)
            throw BugReport("build_auxiliary_graph: half-edge signs at vertex " + std::to_string(at) +
                            " cannot be normalized");
        EdgeId target = (slots[0].first == want_tau) ? slots[0].second : slots[1].second;
        VertexId s = next_vertex++;
        extra_vertices.insert(s);
        if (target == -1) {
            // w-edge: keep only the x-s part, the rest dies with the apex.
            auto& ws = aux.w_sides.at(at);
            if (ws.subdivided) throw BugReport("build_auxiliary_graph: w-edge subdivided twice");
            ws.subdivided = true;
            ws.s = s;
            ws.part = next_edge++;
            hedges[ws.part] = {at, s};
            aux.edge_origin[ws.part] = {HEdgeOrigin::Kind::w_stub, -1};
            return s;
        }
        auto& pi = aux.parts.at(target);
        const Edge& ge = g.edge(target);
        bool at_u = (at == ge.u);
        if ((at_u && pi.cut_at_u) || (!at_u && pi.cut_at_v))
            throw BugReport("build_auxiliary_graph: edge end subdivided twice");
        EdgeId old_part = at_u ? pi.parts.front() : pi.parts.back();
        auto [pa, pb] = hedges.at(old_part);
        VertexId far = (pa == at) ? pb : pa;
        hedges.erase(old_part);
        aux.edge_origin.erase(old_part);
        EdgeId near_id = next_edge++, far_id = next_edge++;
        hedges[near_id] = {at, s};
        hedges[far_id] = {s, far};
        aux.edge_origin[near_id] = {HEdgeOrigin::Kind::graph_edge, target};
        aux.edge_origin[far_id] = {HEdgeOrigin::Kind::graph_edge, target};
        if (at_u) {
            pi.parts.erase(pi.parts.begin());
            pi.parts.insert(pi.parts.begin(), far_id);
            pi.parts.insert(pi.parts.begin(), near_id);
            pi.cut_at_u = true;
        } else {
            pi.parts.pop_back();
            pi.parts.push_back(far_id);
            pi.parts.push_back(near_id);
            pi.cut_at_v = true;
        }
        return s;
    };

    for (EdgeId ze : zero_edges) {
        const Edge& e = g.edge(ze);
        VertexId u = std::min(e.u, e.v), up = std::max(e.u, e.v);
        VertexId s1 = subdivide_slot(u, +1, ze);
        VertexId s2 = subdivide_slot(up, -1, ze);
        EdgeId eprime = next_edge++;
        hedges[eprime] = {s1, s2};
        aux.edge_origin[eprime] = {HEdgeOrigin::Kind::gadget_new, ze};
        aux.gadgets.push_back({ze, eprime, s1, s2});
    }

    std::vector<VertexId> hverts = g.vertices();
    hverts.insert(hverts.end(), extra_vertices.begin(), extra_vertices.end());
    std::vector<Multigraph::MEdge> hes;
    for (auto& [id, uv] : hedges) hes.push_back({id, uv.first, uv.second});
    aux.h = Multigraph(std::move(hverts), std::move(hes));
    return aux;
}

// ---------------------------------------------------------------------------
// Perfect-matching hypothesis checker
// ---------------------------------------------------------------------------

inline bool straddles(const Multigraph& h, const Cycle& c, const std::set<VertexId>& x) {
    bool inside = false, outside = false;
    for (EdgeId eid : c.edges) {
        const auto& e = h.edge(eid);
        bool iu = x.count(e.u) > 0, iv = x.count(e.v) > 0;
        if (iu && iv) inside = true;
        if (!iu && !iv) outside = true;
    }
    return inside && outside;
}

struct PmHypothesesReport {
    ConditionReport well_formed;       // xs on their cycles, cycles valid and odd
    ConditionReport even_degree2;      // |V2(h)| even
    ConditionReport disjoint_cycles;   // cycles pairwise vertex-disjoint
    ConditionReport few_extra_degree2; // |V2(h) - xs| < 6
    ConditionReport no_straddled_3cut;
    ConditionReport no_straddled_4cut;
    bool all_pass() const {
        return well_formed.pass && even_degree2.pass && disjoint_cycles.pass &&
               few_extra_degree2.pass && no_straddled_3cut.pass && no_straddled_4cut.pass;
    }
};

namespace detail {

// All edge cuts delta(X) with |delta(X)| <= 4 and X connected, enumerated by
// candidate cut-edge subsets. Sufficient for the straddle checks: a cycle
// straddling a cut with a disconnected side also straddles the sub-cut of
// the component holding its inside edge.
inline std::vector<std::pair<std::set<VertexId>, std::set<EdgeId>>> small_cuts(const Multigraph& h) {
    std::vector<std::pair<std::set<VertexId>, std::set<EdgeId>>> cuts;
    const int m = static_cast<int>(h.edges.size());
    std::set<std::set<VertexId>> seen;
    std::vector<int> pick;
    std::map<VertexId, std::vector<std::pair<VertexId, EdgeId>>> adj;
    for (const auto& e : h.edges) {
        adj[e.u].push_back({e.v, e.id});
        adj[e.v].push_back({e.u, e.id});
    }
    auto consider = [&](const std::set<EdgeId>& removed) {
        std::map<VertexId, int> comp;
        int nc = 0;
        for (VertexId root : h.verts) {
            if (comp.count(root)) continue;
            std::vector<VertexId> stack{root};
            comp[root] = nc;
            while (!stack.empty()) {
                VertexId v = stack.back();
                stack.pop_back();
                for (auto [w, id] : adj[v]) {
                    if (removed.count(id) || comp.count(w)) continue;
                    comp[w] = nc;
                    stack.push_back(w);
                }
            }
            ++nc;
        }
        if (nc < 2) return;
        for (int c = 0; c < nc; ++c) {
            std::set<VertexId> side;
            for (auto& [v, cc] : comp)
                if (cc == c) side.insert(v);
            if (side.size() == h.verts.size() || side.empty()) continue;
            std::set<EdgeId> cut;
            for (const auto& e : h.edges) {
                bool iu = side.count(e.u) > 0, iv = side.count(e.v) > 0;
                if (iu != iv) cut.insert(e.id);
            }
            if (cut.size() > 4 || cut.empty()) continue;
            if (seen.insert(side).second) cuts.push_back({side, cut});
        }
    };
    std::vector<EdgeId> ids;
    for (const auto& e : h.edges) ids.push_back(e.id);
    // subsets of size 3 and 4
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            for (int c = b + 1; c < m; ++c) {
                consider({ids[a], ids[b], ids[c]});
                for (int d = c + 1; d < m; ++d) consider({ids[a], ids[b], ids[c], ids[d]});
            }
    return cuts;
}

} // namespace detail

// Diagnostic: the five hypotheses of the perfect-matching lemma. Never
// throws; failures carry witnesses.
inline PmHypothesesReport check_pm_hypotheses(const Multigraph& h, const std::vector<VertexId>& xs,
                                              const std::vector<Cycle>& cs) {
    PmHypothesesReport r;
    if (xs.size() != cs.size()) {
        r.well_formed = {false, "xs and cs have different lengths"};
        return r;
    }
    for (size_t i = 0; i < xs.size(); ++i) {
        if (!cs[i].contains_vertex(xs[i]))
            r.well_formed = {false, "x" + std::to_string(i) + " not on its cycle"};
        if (cs[i].length() % 2 == 0)
            r.well_formed = {false, "cycle " + std::to_string(i) + " has even length"};
        if (h.degree(xs[i]) != 2)
            r.well_formed = {false, "x" + std::to_string(i) + " does not have degree 2"};
    }
    std::set<VertexId> v2;
    for (VertexId v : h.verts)
        if (h.degree(v) == 2) v2.insert(v);
    if (v2.size() % 2 != 0)
        r.even_degree2 = {false, "|V2| = " + std::to_string(v2.size())};
    std::set<VertexId> used;
    for (size_t i = 0; i < cs.size(); ++i)
        for (VertexId v : cs[i].verts)
            if (!used.insert(v).second)
                r.disjoint_cycles = {false, "vertex " + std::to_string(v) + " on two cycles"};
    std::set<VertexId> extra = v2;
    for (VertexId x : xs) extra.erase(x);
    if (extra.size() >= 6)
        r.few_extra_degree2 = {false, std::to_string(extra.size()) + " degree-2 vertices outside xs"};

    for (const auto& [side, cut] : detail::small_cuts(h)) {
        for (size_t i = 0; i < cs.size(); ++i) {
            if (!straddles(h, cs[i], side)) continue;
            if (cut.size() == 3 && r.no_straddled_3cut.pass) {
                std::string w = "cycle " + std::to_string(i) + " straddles 3-cut {";
                for (EdgeId e : cut) w += std::to_string(e) + " ";
                r.no_straddled_3cut = {false, w + "}"};
            }
            if (cut.size() == 4) {
                for (size_t j = i + 1; j < cs.size(); ++j)
                    if (straddles(h, cs[j], side) && r.no_straddled_4cut.pass) {
                        std::string w = "cycles " + std::to_string(i) + "," + std::to_string(j) +
                                        " straddle 4-cut {";
                        for (EdgeId e : cut) w += std::to_string(e) + " ";
                        r.no_straddled_4cut = {false, w + "}"};
                    }
            }
        }
    }
    return r;
}

} // namespace sgf
