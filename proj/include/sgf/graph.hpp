#pragma once

// Signed / bidirected graph model: half-edge orientations, switching,
// balance, subdivision and the boundary operator. All types are immutable
// values after construction and all operations are pure functions, so
// everything here is safe to share across threads.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "errors.hpp"

namespace sgf {

using VertexId = int;
using EdgeId = int;

struct Edge {
    EdgeId id = -1;
    VertexId u = -1;
    VertexId v = -1;
    int sign = +1; // -1 or +1

    VertexId other(VertexId w) const {
        if (w == u) return v;
        if (w == v) return u;
        throw DomainError("vertex " + std::to_string(w) + " not an end of edge " + std::to_string(id));
    }
    bool incident(VertexId w) const { return w == u || w == v; }
    bool operator==(const Edge&) const = default;
};

// A closed walk without vertex repeats: edges[i] joins verts[i] and
// verts[(i+1) % L]. Length 2 (a pair of parallel edges) is allowed.
struct Cycle {
    std::vector<VertexId> verts;
    std::vector<EdgeId> edges;

    int length() const { return static_cast<int>(edges.size()); }
    bool contains_vertex(VertexId v) const {
        return std::find(verts.begin(), verts.end(), v) != verts.end();
    }
    bool contains_edge(EdgeId e) const {
        return std::find(edges.begin(), edges.end(), e) != edges.end();
    }
    std::vector<VertexId> sorted_verts() const {
        std::vector<VertexId> s = verts;
        std::sort(s.begin(), s.end());
        return s;
    }
    std::vector<EdgeId> sorted_edges() const {
        std::vector<EdgeId> s = edges;
        std::sort(s.begin(), s.end());
        return s;
    }
};

struct Path {
    std::vector<VertexId> verts; // verts.size() == edges.size() + 1
    std::vector<EdgeId> edges;
    int length() const { return static_cast<int>(edges.size()); }
};

// Subcubic multigraph with edge signs. Vertex and edge ids are stable:
// subgraphs keep the ids of the host. Loops are rejected, parallel edges
// are allowed, and every degree must be at most 3.
class SignedGraph {
public:
    SignedGraph() = default;

    SignedGraph(std::vector<VertexId> verts, std::vector<Edge> edges)
        : verts_(std::move(verts)), edges_(std::move(edges)) {
        std::sort(verts_.begin(), verts_.end());
        verts_.erase(std::unique(verts_.begin(), verts_.end()), verts_.end());
        std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
        validate();
        index();
    }

    // Vertices 0..n-1, edge ids 0..m-1 in the order given.
    static SignedGraph from_edges(int n, const std::vector<std::tuple<VertexId, VertexId, int>>& spec) {
        std::vector<VertexId> vs(n);
        for (int i = 0; i < n; ++i) vs[i] = i;
        std::vector<Edge> es;
        es.reserve(spec.size());
        EdgeId next = 0;
        for (const auto& [u, v, s] : spec) es.push_back(Edge{next++, u, v, s});
        return SignedGraph(std::move(vs), std::move(es));
    }

    const std::vector<VertexId>& vertices() const { return verts_; }
    const std::vector<Edge>& edges() const { return edges_; }
    int vertex_count() const { return static_cast<int>(verts_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    bool has_vertex(VertexId v) const { return std::binary_search(verts_.begin(), verts_.end(), v); }

    bool has_edge(EdgeId e) const { return edge_pos(e) >= 0; }

    const Edge& edge(EdgeId e) const {
        int p = edge_pos(e);
        if (p < 0) throw DomainError("no edge with id " + std::to_string(e));
        return edges_[p];
    }

    int sign(EdgeId e) const { return edge(e).sign; }

    int degree(VertexId v) const {
        auto it = adj_.find(v);
        return it == adj_.end() ? 0 : static_cast<int>(it->second.size());
    }

    // Incident edge ids, ascending.
    const std::vector<EdgeId>& incident(VertexId v) const {
        static const std::vector<EdgeId> kEmpty;
        auto it = adj_.find(v);
        return it == adj_.end() ? kEmpty : it->second;
    }

    VertexId max_vertex_id() const { return verts_.empty() ? -1 : verts_.back(); }
    EdgeId max_edge_id() const { return edges_.empty() ? -1 : edges_.back().id; }

    bool is_cubic() const {
        for (VertexId v : verts_)
            if (degree(v) != 3) return false;
        return !verts_.empty();
    }

    SignedGraph delete_vertices(const std::set<VertexId>& del) const {
        std::vector<VertexId> vs;
        for (VertexId v : verts_)
            if (!del.count(v)) vs.push_back(v);
        std::vector<Edge> es;
        for (const Edge& e : edges_)
            if (!del.count(e.u) && !del.count(e.v)) es.push_back(e);
        return SignedGraph(std::move(vs), std::move(es));
    }

    SignedGraph delete_edges(const std::set<EdgeId>& del) const {
        std::vector<Edge> es;
        for (const Edge& e : edges_)
            if (!del.count(e.id)) es.push_back(e);
        return SignedGraph(verts_, std::move(es));
    }

    SignedGraph induced(const std::set<VertexId>& keep) const {
        std::vector<VertexId> vs;
        for (VertexId v : verts_)
            if (keep.count(v)) vs.push_back(v);
        std::vector<Edge> es;
        for (const Edge& e : edges_)
            if (keep.count(e.u) && keep.count(e.v)) es.push_back(e);
        return SignedGraph(std::move(vs), std::move(es));
    }

    // Keeps vertex set, restricts to the given edges.
    SignedGraph edge_subgraph(const std::set<EdgeId>& keep) const {
        std::vector<Edge> es;
        for (const Edge& e : edges_)
            if (keep.count(e.id)) es.push_back(e);
        return SignedGraph(verts_, std::move(es));
    }

    bool connected() const {
        if (verts_.empty()) return true;
        std::set<VertexId> seen;
        std::vector<VertexId> stack{verts_.front()};
        seen.insert(verts_.front());
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            for (EdgeId eid : incident(v)) {
                VertexId w = edge(eid).other(v);
                if (seen.insert(w).second) stack.push_back(w);
            }
        }
        return seen.size() == verts_.size();
    }

private:
    std::vector<VertexId> verts_;
    std::vector<Edge> edges_;            // sorted by id
    std::map<VertexId, std::vector<EdgeId>> adj_;

    int edge_pos(EdgeId e) const {
        auto it = std::lower_bound(edges_.begin(), edges_.end(), e,
                                   [](const Edge& a, EdgeId id) { return a.id < id; });
        if (it == edges_.end() || it->id != e) return -1;
        return static_cast<int>(it - edges_.begin());
    }

    void validate() const {
        for (size_t i = 1; i < edges_.size(); ++i)
            if (edges_[i].id == edges_[i - 1].id)
                throw PreconditionError("duplicate edge id " + std::to_string(edges_[i].id));
        std::map<VertexId, int> deg;
        for (const Edge& e : edges_) {
            if (e.u == e.v)
                throw PreconditionError("loop at vertex " + std::to_string(e.u) +
                                        " (edge " + std::to_string(e.id) + ")");
            if (e.sign != 1 && e.sign != -1)
                throw PreconditionError("edge " + std::to_string(e.id) + " has sign " + std::to_string(e.sign));
            if (!has_vertex(e.u) || !has_vertex(e.v))
                throw PreconditionError("edge " + std::to_string(e.id) + " has an end outside the vertex set");
            if (++deg[e.u] > 3 || ++deg[e.v] > 3)
                throw PreconditionError("degree above 3 at an end of edge " + std::to_string(e.id));
        }
    }

    void index() {
        for (const Edge& e : edges_) {
            adj_[e.u].push_back(e.id);
            adj_[e.v].push_back(e.id);
        }
        for (auto& [v, ids] : adj_) std::sort(ids.begin(), ids.end());
    }
};

// Half-edge directions, one pair per edge: tau_u belongs to the half at the
// stored Edge::u end, tau_v to the Edge::v end. A valid orientation satisfies
// tau_u * tau_v == -sign(e) on every edge.
struct Orientation {
    std::map<EdgeId, std::pair<int, int>> tau;

    int at(const Edge& e, VertexId end) const {
        auto it = tau.find(e.id);
        if (it == tau.end()) throw DomainError("orientation missing edge " + std::to_string(e.id));
        if (end == e.u) return it->second.first;
        if (end == e.v) return it->second.second;
        throw DomainError("vertex " + std::to_string(end) + " not an end of edge " + std::to_string(e.id));
    }
};

inline bool valid_orientation(const SignedGraph& g, const Orientation& t) {
    for (const Edge& e : g.edges()) {
        auto it = t.tau.find(e.id);
        if (it == t.tau.end()) return false;
        auto [tu, tv] = it->second;
        if ((tu != 1 && tu != -1) || (tv != 1 && tv != -1)) return false;
        if (tu * tv != -e.sign) return false;
    }
    return true;
}

// Positive edges point from the stored u end to the v end; negative edges
// direct both halves away from their ends.
inline Orientation canonical_orientation(const SignedGraph& g) {
    Orientation t;
    for (const Edge& e : g.edges())
        t.tau[e.id] = (e.sign == 1) ? std::make_pair(1, -1) : std::make_pair(1, 1);
    return t;
}

enum class Mod { integers, mod3 };

inline int canon3(long long x) { return static_cast<int>(((x % 3) + 3) % 3); }

// Assignment edge -> value. Mod-3 values are stored canonically in {0,1,2}.
struct EdgeFunction {
    Mod tag = Mod::integers;
    std::map<EdgeId, int> val;

    static EdgeFunction zeros(const SignedGraph& g, Mod tag) {
        EdgeFunction f;
        f.tag = tag;
        for (const Edge& e : g.edges()) f.val[e.id] = 0;
        return f;
    }

    bool defined(EdgeId e) const { return val.count(e) != 0; }

    int at(EdgeId e) const {
        auto it = val.find(e);
        if (it == val.end()) throw DomainError("edge function undefined on edge " + std::to_string(e));
        return it->second;
    }

    void set(EdgeId e, long long x) { val[e] = (tag == Mod::mod3) ? canon3(x) : static_cast<int>(x); }

    void add(EdgeId e, long long x) {
        long long cur = defined(e) ? at(e) : 0;
        set(e, cur + x);
    }
};

// Boundary operator: for each vertex, the tau-weighted sum of incident edge
// values (each parallel edge counted once per half-edge). Exact integers or
// canonical mod-3 residues depending on the function tag.
inline std::map<VertexId, int> boundary(const SignedGraph& g, const Orientation& t, const EdgeFunction& f) {
    std::map<VertexId, long long> acc;
    for (VertexId v : g.vertices()) acc[v] = 0;
    for (const Edge& e : g.edges()) {
        int value = f.at(e.id); // throws DomainError when missing
        acc[e.u] += static_cast<long long>(t.at(e, e.u)) * value;
        acc[e.v] += static_cast<long long>(t.at(e, e.v)) * value;
    }
    std::map<VertexId, int> out;
    for (auto& [v, x] : acc) out[v] = (f.tag == Mod::mod3) ? canon3(x) : static_cast<int>(x);
    return out;
}

inline int boundary_at(const SignedGraph& g, const Orientation& t, const EdgeFunction& f, VertexId v) {
    long long acc = 0;
    for (EdgeId eid : g.incident(v)) {
        const Edge& e = g.edge(eid);
        acc += static_cast<long long>(t.at(e, v)) * f.at(eid);
    }
    return (f.tag == Mod::mod3) ? canon3(acc) : static_cast<int>(acc);
}

inline bool is_valid_cycle(const SignedGraph& g, const Cycle& c) {
    const int L = c.length();
    if (L < 2 || static_cast<int>(c.verts.size()) != L) return false;
    std::set<VertexId> seen(c.verts.begin(), c.verts.end());
    if (static_cast<int>(seen.size()) != L) return false;
    std::set<EdgeId> es(c.edges.begin(), c.edges.end());
    if (static_cast<int>(es.size()) != L) return false;
    for (int i = 0; i < L; ++i) {
        if (!g.has_edge(c.edges[i])) return false;
        const Edge& e = g.edge(c.edges[i]);
        VertexId a = c.verts[i], b = c.verts[(i + 1) % L];
        if (!((e.u == a && e.v == b) || (e.u == b && e.v == a))) return false;
    }
    return true;
}

inline int cycle_sign(const SignedGraph& g, const Cycle& c) {
    if (!is_valid_cycle(g, c)) throw PreconditionError("not a cycle of the graph");
    int s = 1;
    for (EdgeId e : c.edges) s *= g.sign(e);
    return s;
}

// Negates the signature exactly on the cut delta(x); ids preserved.
inline SignedGraph switch_signature(const SignedGraph& g, const std::set<VertexId>& x) {
    std::vector<Edge> es = g.edges();
    for (Edge& e : es) {
        bool iu = x.count(e.u) > 0, iv = x.count(e.v) > 0;
        if (iu != iv) e.sign = -e.sign;
    }
    return SignedGraph(g.vertices(), std::move(es));
}

// Replaces e = (u,v) by a 2-path u - x - v. The u-side edge keeps e's id and
// carries sigma(e); the v-side edge gets a fresh id and sign +1, so the path
// sign equals sigma(e).
inline std::pair<SignedGraph, VertexId> subdivide_edge(const SignedGraph& g, EdgeId eid) {
    const Edge e = g.edge(eid);
    VertexId x = g.max_vertex_id() + 1;
    std::vector<VertexId> vs = g.vertices();
    vs.push_back(x);
    std::vector<Edge> es;
    for (const Edge& f : g.edges())
        if (f.id != eid) es.push_back(f);
    es.push_back(Edge{e.id, e.u, x, e.sign});
    es.push_back(Edge{g.max_edge_id() + 1, x, e.v, +1});
    return {SignedGraph(std::move(vs), std::move(es)), x};
}

// Negates both half-edge directions of e and negates f(e); the boundary is
// unchanged at every vertex.
inline std::pair<Orientation, EdgeFunction> flip_edge(const SignedGraph& g, const Orientation& t,
                                                      const EdgeFunction& f, EdgeId eid) {
    g.edge(eid); // existence check
    Orientation t2 = t;
    auto& pr = t2.tau.at(eid);
    pr.first = -pr.first;
    pr.second = -pr.second;
    EdgeFunction f2 = f;
    if (f2.defined(eid)) f2.set(eid, (f.tag == Mod::mod3) ? canon3(-f.at(eid)) : -f.at(eid));
    return {std::move(t2), std::move(f2)};
}

// Either a two-part vertex labelling under which negative edges cross and
// positive edges do not (the graph is balanced), or a negative witness cycle.
struct BalanceCertificate {
    std::optional<std::map<VertexId, int>> bipartition;
    std::optional<Cycle> witness_cycle;
    bool balanced() const { return bipartition.has_value(); }
};

namespace detail {

// Tree path from a to b given parent pointers (parent edge ids included).
inline Path tree_path(const SignedGraph& g, const std::map<VertexId, std::pair<VertexId, EdgeId>>& parent,
                      const std::map<VertexId, int>& depth, VertexId a, VertexId b) {
    std::vector<VertexId> va{a}, vb{b};
    std::vector<EdgeId> ea, eb;
    VertexId x = a, y = b;
    int dx = depth.at(a), dy = depth.at(b);
    while (dx > dy) {
        auto [p, pe] = parent.at(x);
        ea.push_back(pe);
        va.push_back(p);
        x = p;
        --dx;
    }
    while (dy > dx) {
        auto [p, pe] = parent.at(y);
        eb.push_back(pe);
        vb.push_back(p);
        y = p;
        --dy;
    }
    while (x != y) {
        auto [px, pex] = parent.at(x);
        auto [py, pey] = parent.at(y);
        ea.push_back(pex);
        va.push_back(px);
        eb.push_back(pey);
        vb.push_back(py);
        x = px;
        y = py;
    }
    // join: a .. x == y .. b
    Path p;
    p.verts = va;
    p.edges = ea;
    for (size_t i = eb.size(); i-- > 0;) {
        p.edges.push_back(eb[i]);
        p.verts.push_back(vb[i]);
    }
    (void)g;
    return p;
}

} // namespace detail

// Spanning-forest relabelling: BFS labels s(v) in {0,1} so tree edges become
// positive after switching on {v : s(v)=1}; a non-tree edge that is still
// negative closes a negative fundamental cycle. The returned witness is the
// shortest such cycle (ties by edge id).
inline BalanceCertificate is_balanced(const SignedGraph& g) {
    std::map<VertexId, int> label, depth;
    std::map<VertexId, std::pair<VertexId, EdgeId>> parent;
    std::set<EdgeId> tree;
    for (VertexId root : g.vertices()) {
        if (label.count(root)) continue;
        label[root] = 0;
        depth[root] = 0;
        std::vector<VertexId> queue{root};
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            VertexId v = queue[qi];
            for (EdgeId eid : g.incident(v)) {
                const Edge& e = g.edge(eid);
                VertexId w = e.other(v);
                if (!label.count(w)) {
                    label[w] = label[v] ^ (e.sign < 0 ? 1 : 0);
                    depth[w] = depth[v] + 1;
                    parent[w] = {v, eid};
                    tree.insert(eid);
                    queue.push_back(w);
                }
            }
        }
    }
    // Pick the negative non-tree edge with the shortest fundamental cycle.
    const Edge* best = nullptr;
    int best_len = 0;
    for (const Edge& e : g.edges()) {
        if (tree.count(e.id)) continue;
        int relabeled = e.sign * (label[e.u] != label[e.v] ? -1 : 1);
        if (relabeled > 0) continue;
        Path p = detail::tree_path(g, parent, depth, e.u, e.v);
        int len = p.length() + 1;
        if (!best || len < best_len) {
            best = &e;
            best_len = len;
        }
    }
    BalanceCertificate cert;
    if (!best) {
        cert.bipartition = label;
        return cert;
    }
    Path p = detail::tree_path(g, parent, depth, best->u, best->v);
    Cycle c;
    c.verts = p.verts; // u .. v
    c.edges = p.edges;
    c.edges.push_back(best->id); // closes v back to u
    cert.witness_cycle = std::move(c);
    return cert;
}

// Compact one-line dump for diagnostics and bug reports.
inline std::string to_debug_string(const SignedGraph& g) {
    std::string s = "sg n=" + std::to_string(g.vertex_count()) + " m=" + std::to_string(g.edge_count()) + " |";
    for (const Edge& e : g.edges())
        s += " " + std::to_string(e.id) + ":" + std::to_string(e.u) + (e.sign > 0 ? "+" : "-") + std::to_string(e.v);
    return s;
}

// A preflow has nonzero boundary exactly at the vertices of degree 1 or 2.
inline bool is_preflow(const SignedGraph& g, const Orientation& t, const EdgeFunction& f) {
    auto b = boundary(g, t, f);
    for (VertexId v : g.vertices()) {
        bool low = g.degree(v) == 1 || g.degree(v) == 2;
        if ((b.at(v) != 0) != low) return false;
    }
    return true;
}

} // namespace sgf
