#pragma once

// Independent brute-force ground truth: exhaustive backtracking over integer
// edge values for nowhere-zero k-flows, flow numbers, Z3-flow enumeration
// via the boundary kernel, and switching-class representatives.

#include <algorithm>
#include <chrono>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "cycles.hpp"
#include "flow_certificate.hpp"
#include "graph.hpp"

namespace sgf {

struct OracleBudget {
    long long max_nodes = 50'000'000;
    double max_seconds = 60.0;
    int max_edges = 36;
};

struct OracleResult {
    enum class Kind { found, none, timeout } kind = Kind::none;
    std::optional<FlowCertificate> certificate;
    long long nodes_explored = 0;
};

namespace detail {

// Assignment order: eliminate minimum-degree vertices last, so boundary
// constraints at the surviving frontier close as early as possible.
inline std::vector<EdgeId> oracle_edge_order(const SignedGraph& g) {
    std::map<VertexId, int> pos;
    {
        std::map<VertexId, int> deg;
        std::set<VertexId> alive(g.vertices().begin(), g.vertices().end());
        for (VertexId v : g.vertices()) deg[v] = g.degree(v);
        std::vector<VertexId> elim;
        while (!alive.empty()) {
            VertexId best = -1;
            for (VertexId v : alive)
                if (best == -1 || deg[v] < deg[best] || (deg[v] == deg[best] && v < best)) best = v;
            elim.push_back(best);
            alive.erase(best);
            for (EdgeId eid : g.incident(best)) {
                VertexId w = g.edge(eid).other(best);
                if (alive.count(w)) deg[w]--;
            }
        }
        std::reverse(elim.begin(), elim.end()); // min degree last
        for (size_t i = 0; i < elim.size(); ++i) pos[elim[i]] = static_cast<int>(i);
    }
    std::vector<EdgeId> order;
    for (const Edge& e : g.edges()) order.push_back(e.id);
    std::sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) {
        const Edge &ea = g.edge(a), &eb = g.edge(b);
        auto key = [&](const Edge& e) {
            return std::make_tuple(std::max(pos[e.u], pos[e.v]), std::min(pos[e.u], pos[e.v]), e.id);
        };
        return key(ea) < key(eb);
    });
    return order;
}

} // namespace detail

namespace detail {

struct OracleSearch {
    int m = 0;
    int bound = 0; // k - 1
    std::vector<int> end_u, end_v;   // dense vertex index per edge end
    std::vector<int> tau_u, tau_v;
    std::vector<int> remaining;      // unassigned incident edges per vertex
    std::vector<long long> partial;  // partial boundary per vertex
    std::vector<int> candidates;
    std::vector<int> chosen;
    long long nodes = 0;
    long long max_nodes = 0;
    std::chrono::steady_clock::time_point deadline;
    bool found = false;
    bool timed_out = false;

    bool feasible(int v) const {
        if (remaining[v] == 0) return partial[v] == 0;
        return std::llabs(partial[v]) <= static_cast<long long>(bound) * remaining[v];
    }

    void go(int depth) {
        if (found || timed_out) return;
        if (depth == m) {
            found = true;
            return;
        }
        const int u = end_u[depth], v = end_v[depth];
        const int tu = tau_u[depth], tv = tau_v[depth];
        remaining[u]--;
        remaining[v]--;
        for (int val : candidates) {
            if (++nodes > max_nodes ||
                ((nodes & 0xfff) == 0 && std::chrono::steady_clock::now() > deadline)) {
                timed_out = true;
                break;
            }
            chosen[depth] = val;
            partial[u] += static_cast<long long>(tu) * val;
            partial[v] += static_cast<long long>(tv) * val;
            if (feasible(u) && feasible(v)) go(depth + 1);
            partial[u] -= static_cast<long long>(tu) * val;
            partial[v] -= static_cast<long long>(tv) * val;
            if (found || timed_out) break;
        }
        remaining[u]++;
        remaining[v]++;
    }
};

} // namespace detail

// Exhaustive search for a nowhere-zero k-flow under the canonical
// orientation (flip symmetry makes the orientation choice harmless).
inline OracleResult oracle_flow_exists(const SignedGraph& g, int k, const OracleBudget& budget = {}) {
    if (k < 2) throw PreconditionError("oracle_flow_exists: k must be >= 2");
    if (g.edge_count() > budget.max_edges)
        throw PreconditionError("oracle_flow_exists: " + std::to_string(g.edge_count()) +
                                " edges exceeds the budget cap of " + std::to_string(budget.max_edges));
    Orientation t = canonical_orientation(g);
    std::vector<EdgeId> order = detail::oracle_edge_order(g);

    std::map<VertexId, int> dense;
    for (VertexId v : g.vertices()) dense[v] = static_cast<int>(dense.size());

    detail::OracleSearch s;
    s.m = static_cast<int>(order.size());
    s.bound = k - 1;
    s.remaining.assign(dense.size(), 0);
    s.partial.assign(dense.size(), 0);
    for (VertexId v : g.vertices()) s.remaining[dense[v]] = g.degree(v);
    for (EdgeId eid : order) {
        const Edge& e = g.edge(eid);
        s.end_u.push_back(dense[e.u]);
        s.end_v.push_back(dense[e.v]);
        s.tau_u.push_back(t.at(e, e.u));
        s.tau_v.push_back(t.at(e, e.v));
    }
    for (int x = -(k - 1); x <= k - 1; ++x)
        if (x != 0) s.candidates.push_back(x);
    s.chosen.assign(s.m, 0);
    s.max_nodes = budget.max_nodes;
    s.deadline = std::chrono::steady_clock::now() + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                                        std::chrono::duration<double>(budget.max_seconds));
    s.go(0);

    OracleResult res;
    res.nodes_explored = s.nodes;
    if (s.timed_out) {
        res.kind = OracleResult::Kind::timeout;
        return res;
    }
    if (!s.found) {
        res.kind = OracleResult::Kind::none;
        return res;
    }
    res.kind = OracleResult::Kind::found;
    FlowCertificate cert;
    cert.orientation = t;
    cert.values.tag = Mod::integers;
    for (int i = 0; i < s.m; ++i) cert.values.set(order[i], s.chosen[i]);
    cert.bound_k = k;
    cert.nowhere_zero = true;
    for (auto& [v, x] : boundary(g, t, cert.values)) cert.report[v] = x;
    VerifyReport vr = verify_flow(g, cert, k, true);
    if (!vr.ok) throw BugReport("oracle_flow_exists: found certificate fails verification");
    res.certificate = std::move(cert);
    return res;
}

struct FlowNumberResult {
    enum class Kind { found, none, timeout } kind = Kind::none;
    int flow_number = 0;
    std::optional<FlowCertificate> certificate;
    long long nodes_explored = 0;
};

// Least k <= cap with a nowhere-zero k-flow.
inline FlowNumberResult oracle_flow_number(const SignedGraph& g, int cap = 8,
                                           const OracleBudget& budget = {}) {
    FlowNumberResult out;
    for (int k = 2; k <= cap; ++k) {
        OracleResult r = oracle_flow_exists(g, k, budget);
        out.nodes_explored += r.nodes_explored;
        if (r.kind == OracleResult::Kind::timeout) {
            out.kind = FlowNumberResult::Kind::timeout;
            return out;
        }
        if (r.kind == OracleResult::Kind::found) {
            out.kind = FlowNumberResult::Kind::found;
            out.flow_number = k;
            out.certificate = std::move(r.certificate);
            return out;
        }
    }
    out.kind = FlowNumberResult::Kind::none;
    return out;
}

// All Z3-flows: the kernel of the boundary map over GF(3) under the
// canonical orientation, enumerated from a Gaussian basis and sorted by
// value vector.
inline std::vector<EdgeFunction> enumerate_z3_flows(const SignedGraph& g) {
    if (g.edge_count() > 20) throw PreconditionError("enumerate_z3_flows: more than 20 edges");
    Orientation t = canonical_orientation(g);
    const int m = g.edge_count();
    std::vector<EdgeId> cols;
    for (const Edge& e : g.edges()) cols.push_back(e.id);
    std::vector<std::vector<int>> rows;
    for (VertexId v : g.vertices()) {
        std::vector<int> row(m, 0);
        for (int j = 0; j < m; ++j) {
            const Edge& e = g.edge(cols[j]);
            if (e.u == v) row[j] = canon3(row[j] + (t.at(e, e.u) == 1 ? 1 : 2));
            if (e.v == v) row[j] = canon3(row[j] + (t.at(e, e.v) == 1 ? 1 : 2));
        }
        rows.push_back(std::move(row));
    }
    // Gauss over GF(3).
    int rank = 0;
    std::vector<int> pivot_col;
    for (int c = 0; c < m && rank < static_cast<int>(rows.size()); ++c) {
        int pr = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r)
            if (rows[r][c] != 0) {
                pr = r;
                break;
            }
        if (pr == -1) continue;
        std::swap(rows[rank], rows[pr]);
        int inv = rows[rank][c]; // 1 or 2, self-inverse
        for (int j = 0; j < m; ++j) rows[rank][j] = canon3(static_cast<long long>(rows[rank][j]) * inv);
        for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
            if (r == rank || rows[r][c] == 0) continue;
            int f = rows[r][c];
            for (int j = 0; j < m; ++j)
                rows[r][j] = canon3(rows[r][j] - static_cast<long long>(f) * rows[rank][j]);
        }
        pivot_col.push_back(c);
        ++rank;
    }
    std::vector<int> free_cols;
    {
        std::set<int> piv(pivot_col.begin(), pivot_col.end());
        for (int c = 0; c < m; ++c)
            if (!piv.count(c)) free_cols.push_back(c);
    }
    const int dim = static_cast<int>(free_cols.size());
    if (dim > 14) throw BudgetExceeded("enumerate_z3_flows: kernel dimension " + std::to_string(dim));
    // Basis vector per free column.
    std::vector<std::vector<int>> basis;
    for (int fc : free_cols) {
        std::vector<int> vec(m, 0);
        vec[fc] = 1;
        for (int r = 0; r < rank; ++r) vec[pivot_col[r]] = canon3(-rows[r][fc]);
        basis.push_back(std::move(vec));
    }
    std::vector<std::vector<int>> vecs;
    std::vector<int> coef(dim, 0);
    long long total = 1;
    for (int i = 0; i < dim; ++i) total *= 3;
    for (long long it = 0; it < total; ++it) {
        long long x = it;
        std::vector<int> vec(m, 0);
        for (int i = 0; i < dim; ++i) {
            int ci = static_cast<int>(x % 3);
            x /= 3;
            if (ci)
                for (int j = 0; j < m; ++j) vec[j] = canon3(vec[j] + static_cast<long long>(ci) * basis[i][j]);
        }
        vecs.push_back(std::move(vec));
    }
    std::sort(vecs.begin(), vecs.end());
    std::vector<EdgeFunction> out;
    for (const auto& vec : vecs) {
        EdgeFunction f;
        f.tag = Mod::mod3;
        for (int j = 0; j < m; ++j) f.set(cols[j], vec[j]);
        out.push_back(std::move(f));
    }
    return out;
}

// One representative signature per switching class: the cosets of the GF(2)
// cut space, each taken at its lexicographically least negative-edge set
// (zero on the pivot columns of the star-cut basis).
inline std::vector<SignedGraph> switching_classes(const SignedGraph& g) {
    if (g.vertex_count() > 24) throw PreconditionError("switching_classes: more than 24 vertices");
    const int m = g.edge_count();
    std::vector<EdgeId> cols;
    for (const Edge& e : g.edges()) cols.push_back(e.id);
    std::map<EdgeId, int> col_of;
    for (int j = 0; j < m; ++j) col_of[cols[j]] = j;
    // Star cuts of all vertices span the cut space (rank n - c).
    std::vector<std::vector<int>> rows;
    for (VertexId v : g.vertices()) {
        std::vector<int> row(m, 0);
        for (EdgeId eid : g.incident(v)) row[col_of[eid]] ^= 1;
        rows.push_back(std::move(row));
    }
    int rank = 0;
    std::vector<int> pivot_col;
    for (int c = 0; c < m && rank < static_cast<int>(rows.size()); ++c) {
        int pr = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r)
            if (rows[r][c]) {
                pr = r;
                break;
            }
        if (pr == -1) continue;
        std::swap(rows[rank], rows[pr]);
        for (int r = 0; r < static_cast<int>(rows.size()); ++r)
            if (r != rank && rows[r][c])
                for (int j = 0; j < m; ++j) rows[r][j] ^= rows[rank][j];
        pivot_col.push_back(c);
        ++rank;
    }
    std::vector<int> free_cols;
    {
        std::set<int> piv(pivot_col.begin(), pivot_col.end());
        for (int c = 0; c < m; ++c)
            if (!piv.count(c)) free_cols.push_back(c);
    }
    const int dim = static_cast<int>(free_cols.size());
    if (dim > 20) throw BudgetExceeded("switching_classes: " + std::to_string(dim) + " free edges");
    std::vector<SignedGraph> out;
    for (long long mask = 0; mask < (1LL << dim); ++mask) {
        std::vector<Edge> es = g.edges();
        for (Edge& e : es) e.sign = +1;
        for (int i = 0; i < dim; ++i)
            if (mask & (1LL << i)) {
                EdgeId id = cols[free_cols[i]];
                for (Edge& e : es)
                    if (e.id == id) e.sign = -1;
            }
        out.push_back(SignedGraph(g.vertices(), std::move(es)));
    }
    return out;
}

// Canonical representative of g's switching class (matching the enumeration
// in switching_classes): negative set reduced to zero on the pivot columns.
inline SignedGraph canonical_switching_representative(const SignedGraph& g) {
    const int m = g.edge_count();
    std::vector<EdgeId> cols;
    for (const Edge& e : g.edges()) cols.push_back(e.id);
    std::map<EdgeId, int> col_of;
    for (int j = 0; j < m; ++j) col_of[cols[j]] = j;
    std::vector<std::vector<int>> rows;
    for (VertexId v : g.vertices()) {
        std::vector<int> row(m, 0);
        for (EdgeId eid : g.incident(v)) row[col_of[eid]] ^= 1;
        rows.push_back(std::move(row));
    }
    int rank = 0;
    std::vector<int> pivot_col;
    for (int c = 0; c < m && rank < static_cast<int>(rows.size()); ++c) {
        int pr = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r)
            if (rows[r][c]) {
                pr = r;
                break;
            }
        if (pr == -1) continue;
        std::swap(rows[rank], rows[pr]);
        for (int r = 0; r < static_cast<int>(rows.size()); ++r)
            if (r != rank && rows[r][c])
                for (int j = 0; j < m; ++j) rows[r][j] ^= rows[rank][j];
        pivot_col.push_back(c);
        ++rank;
    }
    std::vector<int> sig(m, 0);
    for (int j = 0; j < m; ++j) sig[j] = g.edges()[j].sign == -1 ? 1 : 0;
    for (int r = 0; r < rank; ++r)
        if (sig[pivot_col[r]])
            for (int j = 0; j < m; ++j) sig[j] ^= rows[r][j];
    std::vector<Edge> es = g.edges();
    for (int j = 0; j < m; ++j) es[j].sign = sig[j] ? -1 : +1;
    return SignedGraph(g.vertices(), std::move(es));
}

} // namespace sgf
