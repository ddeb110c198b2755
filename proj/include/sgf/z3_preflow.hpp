#pragma once

// Mod-3 boundary correctors on bidirected cycles and the global Z3-preflow
// over a subdivided instance. The preflow is built back to front over the
// cycle list, one of three cases per entry (positive / ordinary / special).

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "decomposition.hpp"
#include "graph.hpp"

namespace sgf {

struct BoundaryTarget {
    std::map<VertexId, int> b; // canonical {0,1,2}, domain V(C)
    int at(VertexId v) const {
        auto it = b.find(v);
        if (it == b.end()) throw DomainError("boundary target undefined at vertex " + std::to_string(v));
        return it->second;
    }
};

namespace detail {

inline int tau3(int t) { return t == 1 ? 1 : 2; } // tau into Z3; inv(1)=1, inv(2)=2

} // namespace detail

// tau on E(c) with boundary exactly b. Negative cycles solve any target via
// the +-1 circulation basis; an all-positive cycle needs sum(b) = 0 and is
// solved greedily from a start vertex. Mixed-sign positive cycles are
// outside the contract.
inline EdgeFunction solve_cycle_boundary(const SignedGraph& g, const Orientation& t, const Cycle& c,
                                         const BoundaryTarget& b) {
    if (!is_valid_cycle(g, c)) throw PreconditionError("solve_cycle_boundary: not a cycle");
    const int L = c.length();
    const int s = cycle_sign(g, c);
    if (s == 1) {
        for (EdgeId e : c.edges)
            if (g.sign(e) != 1)
                throw PreconditionError("solve_cycle_boundary: positive cycle with a negative edge");
        long long sum = 0;
        for (VertexId v : c.verts) sum += b.at(v);
        if (canon3(sum) != 0)
            throw Unsolvable("solve_cycle_boundary: sum of targets is " + std::to_string(canon3(sum)) +
                             " on an all-positive cycle (conservation forces 0)");
    }

    // Value on edge i as an affine function p_i + q_i * T of the value T on
    // edge 0; interior vertices fix the recurrence, the start vertex closes it.
    std::vector<int> p(L), q(L);
    p[0] = 0;
    q[0] = 1;
    auto tau_at = [&](int ei, VertexId v) { return detail::tau3(t.at(g.edge(c.edges[ei]), v)); };
    for (int i = 1; i < L; ++i) {
        VertexId v = c.verts[i]; // meeting point of edges i-1 and i
        int inv = tau_at(i, v);  // tau values are self-inverse mod 3
        p[i] = canon3(static_cast<long long>(inv) * (b.at(v) - tau_at(i - 1, v) * p[i - 1]));
        q[i] = canon3(-static_cast<long long>(inv) * tau_at(i - 1, v) * q[i - 1]);
    }
    VertexId v0 = c.verts[0];
    int coef = canon3(static_cast<long long>(tau_at(L - 1, v0)) * q[L - 1] + tau_at(0, v0));
    int rhs = canon3(static_cast<long long>(b.at(v0)) - static_cast<long long>(tau_at(L - 1, v0)) * p[L - 1]);
    int T;
    if (coef != 0) {
        T = canon3(static_cast<long long>(coef) * rhs); // inv(coef) == coef for coef in {1,2}
    } else {
        if (rhs != 0) throw Unsolvable("solve_cycle_boundary: closure inconsistent");
        T = 0;
    }
    EdgeFunction f;
    f.tag = Mod::mod3;
    for (int i = 0; i < L; ++i) f.set(c.edges[i], p[i] + static_cast<long long>(q[i]) * T);
    return f;
}

// +-1 values on a negative odd cycle whose boundary is nonzero at every
// vertex: propagate a source/sink flag around the cycle (flipped across
// positive edges) and decode values against the given orientation.
inline EdgeFunction odd_negative_unit_boundary(const SignedGraph& g, const Orientation& t, const Cycle& c) {
    if (!is_valid_cycle(g, c)) throw PreconditionError("odd_negative_unit_boundary: not a cycle");
    if (cycle_sign(g, c) != -1) throw PreconditionError("odd_negative_unit_boundary: cycle is positive");
    if (c.length() % 2 == 0) throw PreconditionError("odd_negative_unit_boundary: cycle has even length");
    const int L = c.length();
    std::vector<int> B(L);
    B[0] = 1;
    for (int i = 1; i < L; ++i) B[i] = -g.sign(c.edges[i - 1]) * B[i - 1];
    if (B[0] != -g.sign(c.edges[L - 1]) * B[L - 1])
        throw BugReport("odd_negative_unit_boundary: flag propagation failed to close");
    EdgeFunction f;
    f.tag = Mod::mod3;
    for (int i = 0; i < L; ++i) {
        int a = t.at(g.edge(c.edges[i]), c.verts[i]) * B[i];
        f.set(c.edges[i], a);
    }
    return f;
}

namespace detail {

// Switch set making every positive starred cycle all-positive: within each
// positive cycle, flip the vertices whose prefix sign from the start is -1.
inline std::set<VertexId> positive_cycle_switch_set(const SignedGraph& g, const CycleList& cl) {
    std::set<VertexId> sw;
    for (const auto& en : cl.entries) {
        if (en.cls != CycleClass::positive || !en.gc.is_cycle()) continue;
        const Cycle& c = en.gc.cycle;
        int prefix = 1;
        for (int i = 1; i < c.length(); ++i) {
            prefix *= g.sign(c.edges[i - 1]);
            if (prefix == -1) sw.insert(c.verts[i]);
        }
    }
    return sw;
}

inline Orientation negate_at(const SignedGraph& g, const Orientation& t, const std::set<VertexId>& x) {
    Orientation out = t;
    for (const Edge& e : g.edges()) {
        auto& pr = out.tau.at(e.id);
        if (x.count(e.u)) pr.first = -pr.first;
        if (x.count(e.v)) pr.second = -pr.second;
    }
    return out;
}

} // namespace detail

// The Z3-preflow on the starred graph: boundary nonzero exactly at the
// degree-2 subdivision vertices, every zero edge on a positive or special
// starred cycle, and the zero set a matching. Values are reported against
// the caller's signature and orientation; the internal switch that makes
// positive cycles all-positive is undone before returning.
inline EdgeFunction construct_z3_preflow(const SubdividedInstance& inst, const Orientation& t) {
    const SignedGraph& gS = inst.g_star;
    if (!valid_orientation(gS, t))
        throw PreconditionError("construct_z3_preflow: orientation invalid for the starred graph");

    std::set<VertexId> sw = detail::positive_cycle_switch_set(gS, inst.list_star);
    SignedGraph gw = switch_signature(gS, sw);
    Orientation tw = detail::negate_at(gS, t, sw);

    const auto& entries = inst.list_star.entries;
    std::vector<std::set<VertexId>> vsets;
    for (const auto& en : entries) vsets.push_back(en.gc.vertex_set());

    EdgeFunction phi = EdgeFunction::zeros(gw, Mod::mod3);
    const int n_entries = static_cast<int>(entries.size());
    for (int k = n_entries - 1; k >= 0; --k) {
        std::set<VertexId> later;
        for (int i = k + 1; i < n_entries; ++i) later.insert(vsets[i].begin(), vsets[i].end());
        const auto& vs = vsets[k];

        std::vector<EdgeId> chords, to_earlier;
        std::set<EdgeId> own_cycle;
        if (entries[k].gc.is_cycle())
            own_cycle.insert(entries[k].gc.cycle.edges.begin(), entries[k].gc.cycle.edges.end());
        for (const Edge& e : gw.edges()) {
            bool iu = vs.count(e.u), iv = vs.count(e.v);
            if (iu && iv && !own_cycle.count(e.id)) chords.push_back(e.id);
            if (iu != iv) {
                VertexId outside = iu ? e.v : e.u;
                if (!later.count(outside)) to_earlier.push_back(e.id);
            }
        }

        switch (entries[k].cls) {
            case CycleClass::positive: {
                for (EdgeId e : chords) phi.set(e, 1);
                if (static_cast<int>(to_earlier.size()) < 2)
                    throw BugReport("construct_z3_preflow: positive entry with fewer than 2 edges back (" +
                                    to_debug_string(gS) + ")");
                long long S = 0;
                for (VertexId v : vs) S += boundary_at(gw, tw, phi, v);
                // Start every back edge at +1 and flip a smallest set of them
                // so the entry's total boundary vanishes.
                std::map<EdgeId, int> eps;
                int base = 0;
                std::map<EdgeId, int> tau_in; // tau at the entry-side end
                for (EdgeId eid : to_earlier) {
                    const Edge& e = gw.edge(eid);
                    VertexId inside = vs.count(e.u) ? e.u : e.v;
                    tau_in[eid] = tw.at(e, inside);
                    eps[eid] = 1;
                    base += tau_in[eid];
                }
                int need = canon3(-(S + base)); // flipping e adds tau_in[e] mod 3
                bool done = need == 0;
                if (!done) {
                    for (size_t i = 0; i < to_earlier.size() && !done; ++i)
                        if (canon3(tau_in[to_earlier[i]]) == need) {
                            eps[to_earlier[i]] = -1;
                            done = true;
                        }
                }
                if (!done) {
                    for (size_t i = 0; i < to_earlier.size() && !done; ++i)
                        for (size_t j = i + 1; j < to_earlier.size() && !done; ++j)
                            if (canon3(tau_in[to_earlier[i]] + tau_in[to_earlier[j]]) == need) {
                                eps[to_earlier[i]] = eps[to_earlier[j]] = -1;
                                done = true;
                            }
                }
                if (!done) throw BugReport("construct_z3_preflow: cannot balance a positive entry");
                for (EdgeId eid : to_earlier) phi.set(eid, eps[eid]);
                if (entries[k].gc.is_cycle()) {
                    BoundaryTarget b;
                    for (VertexId v : vs) b.b[v] = canon3(-boundary_at(gw, tw, phi, v));
                    EdgeFunction corr = solve_cycle_boundary(gw, tw, entries[k].gc.cycle, b);
                    for (EdgeId e : entries[k].gc.cycle.edges) phi.add(e, corr.at(e));
                } else {
                    if (boundary_at(gw, tw, phi, entries[k].gc.vertex) != 0)
                        throw BugReport("construct_z3_preflow: single vertex entry kept nonzero boundary");
                }
                break;
            }
            case CycleClass::ordinary: {
                const Cycle& c = entries[k].gc.cycle;
                EdgeFunction unit = odd_negative_unit_boundary(gw, tw, c);
                // At most one vertex already touches a later entry.
                VertexId w = -1;
                int later_edges = 0;
                for (const Edge& e : gw.edges()) {
                    bool iu = vs.count(e.u), iv = vs.count(e.v);
                    if (iu != iv && later.count(iu ? e.v : e.u)) {
                        ++later_edges;
                        w = iu ? e.u : e.v;
                    }
                }
                if (later_edges > 1)
                    throw BugReport("construct_z3_preflow: ordinary entry touches later entries twice");
                if (w != -1) {
                    int cur = boundary_at(gw, tw, phi, w);
                    EdgeFunction probe = phi;
                    for (EdgeId e : c.edges) probe.add(e, unit.at(e));
                    if (boundary_at(gw, tw, probe, w) != 0)
                        for (EdgeId e : c.edges) unit.set(e, -unit.at(e));
                    EdgeFunction probe2 = phi;
                    for (EdgeId e : c.edges) probe2.add(e, unit.at(e));
                    if (boundary_at(gw, tw, probe2, w) != 0)
                        throw BugReport("construct_z3_preflow: unit corrector cannot cancel at the attachment vertex");
                    (void)cur;
                }
                for (EdgeId e : c.edges) phi.add(e, unit.at(e));
                for (EdgeId eid : to_earlier) {
                    const Edge& e = gw.edge(eid);
                    VertexId inside = vs.count(e.u) ? e.u : e.v;
                    int cur = boundary_at(gw, tw, phi, inside);
                    if (cur == 0)
                        throw BugReport("construct_z3_preflow: ordinary cycle vertex balanced before its back edge");
                    int val = canon3(static_cast<long long>(detail::tau3(tw.at(e, inside))) * (3 - cur));
                    phi.set(eid, val);
                }
                break;
            }
            case CycleClass::special: {
                const Cycle& c = entries[k].gc.cycle;
                for (EdgeId e : chords) phi.set(e, 1);
                for (EdgeId e : to_earlier) phi.set(e, 1);
                auto xit = inst.x_map.find(k);
                if (xit == inst.x_map.end())
                    throw BugReport("construct_z3_preflow: special entry without a subdivision vertex");
                BoundaryTarget b;
                for (VertexId v : vs)
                    b.b[v] = (v == xit->second) ? 1 : canon3(-boundary_at(gw, tw, phi, v));
                EdgeFunction corr = solve_cycle_boundary(gw, tw, c, b); // cycle is negative
                for (EdgeId e : c.edges) phi.add(e, corr.at(e));
                break;
            }
        }
    }

    // Preflow and zero-set checks against the working signature.
    auto bd = boundary(gw, tw, phi);
    for (VertexId v : gS.vertices()) {
        bool deg2 = gS.degree(v) == 2;
        if ((bd.at(v) != 0) != deg2)
            throw BugReport("construct_z3_preflow: boundary pattern wrong at vertex " + std::to_string(v));
    }
    std::set<EdgeId> allowed;
    for (const auto& en : entries)
        if (en.gc.is_cycle() && (en.cls == CycleClass::positive || en.cls == CycleClass::special))
            allowed.insert(en.gc.cycle.edges.begin(), en.gc.cycle.edges.end());
    std::set<VertexId> zero_ends;
    for (const Edge& e : gS.edges()) {
        if (phi.at(e.id) != 0) continue;
        if (!allowed.count(e.id))
            throw BugReport("construct_z3_preflow: zero edge off the positive/special cycles");
        if (!zero_ends.insert(e.u).second || !zero_ends.insert(e.v).second)
            throw BugReport("construct_z3_preflow: zero set is not a matching");
    }
    // Values carry over unchanged to the caller's signature; the boundary at
    // a switched vertex is negated, which preserves the preflow pattern.
    return phi;
}

} // namespace sgf
