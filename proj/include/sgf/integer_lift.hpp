#pragma once

// Integer lifts of mod-3 (pre)flows, the matching 2-preflow, the final
// 8-flow assembly with contraction back to the host graph, and the
// flow-admissibility decision.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "connectivity.hpp"
#include "decomposition.hpp"
#include "flow_certificate.hpp"
#include "matching.hpp"
#include "oracle.hpp"
#include "z3_preflow.hpp"

namespace sgf {

namespace detail {

// +-1 values around a cycle with zero boundary at every vertex except
// possibly the start: the propagation closes with boundary 0 at the start
// on a positive cycle and +-2 on a negative one.
inline std::map<EdgeId, int> unit_circulation(const SignedGraph& g, const Orientation& t, const Cycle& c,
                                              VertexId start, int* start_boundary = nullptr) {
    const int L = c.length();
    int off = 0;
    while (c.verts[off] != start) {
        ++off;
        if (off == L) throw PreconditionError("unit_circulation: start vertex not on the cycle");
    }
    auto vert = [&](int i) { return c.verts[(off + i) % L]; };
    auto edge = [&](int i) { return c.edges[(off + i) % L]; };
    std::vector<int> a(L);
    a[0] = 1;
    for (int i = 1; i < L; ++i) {
        const Edge& prev = g.edge(edge(i - 1));
        const Edge& cur = g.edge(edge(i));
        a[i] = -t.at(prev, vert(i)) * t.at(cur, vert(i)) * a[i - 1];
    }
    int closing = t.at(g.edge(edge(0)), start) * a[0] + t.at(g.edge(edge(L - 1)), start) * a[L - 1];
    if (start_boundary) *start_boundary = closing;
    std::map<EdgeId, int> out;
    for (int i = 0; i < L; ++i) out[edge(i)] = a[i];
    return out;
}

} // namespace detail

// Decodes a perfect matching of the auxiliary graph into a 4-preflow
// congruent to phi: matched edges carry -2 against 1 (a subdivided edge
// counts as matched through the parts away from its gadget ends), and each
// zero edge takes 0 or +-3 according to the parity of {e, e'} in the
// matching. Boundary is 0 at degree-3 vertices and +-1 at degree-2 ones.
inline EdgeFunction lift_to_4preflow(const SignedGraph& g, const Orientation& t, const EdgeFunction& phi,
                                     const std::vector<EdgeId>& m) {
    AuxiliaryGraph aux = build_auxiliary_graph(g, t, phi);
    if (!is_perfect_matching(aux.h, m))
        throw PreconditionError("lift_to_4preflow: matching is not perfect in the auxiliary graph");
    std::set<EdgeId> M(m.begin(), m.end());

    EdgeFunction psi;
    psi.tag = Mod::integers;
    for (const Edge& e : g.edges()) {
        if (aux.phi_work.at(e.id) == 0) continue;
        const auto& pi = aux.parts.at(e.id);
        size_t from = pi.cut_at_u ? 1 : 0;
        size_t to = pi.parts.size() - (pi.cut_at_v ? 1 : 0);
        bool matched = false;
        for (size_t i = from; i < to; ++i)
            if (M.count(pi.parts[i])) matched = true;
        psi.set(e.id, matched ? -2 : 1);
    }
    auto boundary_target_ok = [&](VertexId v) {
        long long acc = 0;
        for (EdgeId eid : g.incident(v)) {
            const Edge& e = g.edge(eid);
            acc += static_cast<long long>(aux.t_work.at(e, v)) * psi.at(eid);
        }
        return g.degree(v) == 3 ? acc == 0 : (acc == 1 || acc == -1);
    };
    for (const auto& gd : aux.gadgets) {
        int count = static_cast<int>(M.count(gd.zero_edge)) + static_cast<int>(M.count(gd.new_edge));
        const Edge& e = g.edge(gd.zero_edge);
        if (count != 1) {
            psi.set(gd.zero_edge, 0);
            continue;
        }
        bool ok = false;
        for (int cand : {3, -3}) {
            psi.set(gd.zero_edge, cand);
            if (boundary_target_ok(e.u) && boundary_target_ok(e.v)) {
                ok = true;
                break;
            }
        }
        if (!ok)
            throw BugReport("lift_to_4preflow: neither sign of 3 balances zero edge " +
                            std::to_string(gd.zero_edge));
    }
    for (VertexId v : g.vertices())
        if (!boundary_target_ok(v))
            throw BugReport("lift_to_4preflow: boundary target failed at vertex " + std::to_string(v));

    // Undo the value flips; switching only negates boundaries vertex-wise,
    // which preserves the target pattern, so values carry over as-is.
    for (EdgeId e : aux.flipped) psi.set(e, -psi.at(e));
    for (const Edge& e : g.edges())
        if (canon3(psi.at(e.id)) != phi.at(e.id))
            throw BugReport("lift_to_4preflow: psi not congruent to phi on edge " + std::to_string(e.id));
    return psi;
}

// Nowhere-zero Z3-flow to a congruent nowhere-zero 3-flow: normalize to the
// all-ones flow by flips, then a perfect matching carries -2 against 1.
inline EdgeFunction z3flow_to_3flow(const SignedGraph& g, const Orientation& t, const EdgeFunction& phi) {
    if (!g.is_cubic()) throw PreconditionError("z3flow_to_3flow: graph is not cubic");
    if (vertex_connectivity(g) < 2) throw PreconditionError("z3flow_to_3flow: graph is not 2-connected");
    for (const Edge& e : g.edges())
        if (phi.at(e.id) == 0) throw PreconditionError("z3flow_to_3flow: phi has a zero edge");
    for (auto& [v, x] : boundary(g, t, phi))
        if (x != 0) throw PreconditionError("z3flow_to_3flow: phi is not a flow");

    std::set<EdgeId> flipped;
    for (const Edge& e : g.edges())
        if (phi.at(e.id) == 2) flipped.insert(e.id);
    std::vector<EdgeId> m = maximum_matching(Multigraph::of(g));
    if (!is_perfect_matching(Multigraph::of(g), m))
        throw BugReport("z3flow_to_3flow: bridgeless cubic graph without a perfect matching");
    std::set<EdgeId> M(m.begin(), m.end());
    EdgeFunction psi;
    psi.tag = Mod::integers;
    for (const Edge& e : g.edges()) {
        int val = M.count(e.id) ? -2 : 1;
        if (flipped.count(e.id)) val = -val;
        psi.set(e.id, val);
    }
    for (auto& [v, x] : boundary(g, t, psi))
        if (x != 0) throw BugReport("z3flow_to_3flow: lift failed at vertex " + std::to_string(v));
    return psi;
}

// Z3-flow (zero set arbitrary) to a congruent 4-flow: vertices with three
// zero edges become positive triangles carrying a unit circulation, the
// matching lift runs on the expansion, and the result restricts back.
inline EdgeFunction z3flow_to_4flow(const SignedGraph& g, const Orientation& t, const EdgeFunction& phi) {
    if (!g.is_cubic()) throw PreconditionError("z3flow_to_4flow: graph is not cubic");
    if (vertex_connectivity(g) < 2) throw PreconditionError("z3flow_to_4flow: graph is not 2-connected");
    for (auto& [v, x] : boundary(g, t, phi))
        if (x != 0) throw PreconditionError("z3flow_to_4flow: phi is not a flow");

    bool all_zero = true;
    for (const Edge& e : g.edges())
        if (phi.at(e.id) != 0) all_zero = false;
    if (all_zero) {
        EdgeFunction zero;
        zero.tag = Mod::integers;
        for (const Edge& e : g.edges()) zero.set(e.id, 0);
        return zero;
    }

    // Triangle-expand every vertex whose three edges are all zero.
    SignedGraph gx = g;
    Orientation tx = t;
    EdgeFunction phix = phi;
    VertexId next_v = g.max_vertex_id() + 1;
    EdgeId next_e = g.max_edge_id() + 1;
    for (VertexId v : g.vertices()) {
        bool full_zero = g.degree(v) == 3;
        for (EdgeId eid : g.incident(v))
            if (phi.at(eid) != 0) full_zero = false;
        if (!full_zero) continue;
        std::vector<EdgeId> inc = gx.incident(v);
        std::vector<VertexId> corners{next_v, next_v + 1, next_v + 2};
        next_v += 3;
        std::vector<Edge> es;
        for (const Edge& e : gx.edges()) es.push_back(e);
        for (size_t i = 0; i < 3; ++i) {
            for (Edge& e : es)
                if (e.id == inc[i]) {
                    if (e.u == v) e.u = corners[i];
                    else e.v = corners[i];
                }
        }
        std::vector<VertexId> vs;
        for (VertexId w : gx.vertices())
            if (w != v) vs.push_back(w);
        vs.insert(vs.end(), corners.begin(), corners.end());
        for (int i = 0; i < 3; ++i) {
            Edge te{next_e + i, corners[i], corners[(i + 1) % 3], +1};
            es.push_back(te);
            tx.tau[te.id] = {1, -1}; // directed triangle: constant 1 circulates
            phix.set(te.id, 1);
        }
        next_e += 3;
        gx = SignedGraph(std::move(vs), std::move(es));
    }
    for (auto& [v, x] : boundary(gx, tx, phix))
        if (x != 0) throw BugReport("z3flow_to_4flow: expansion broke the flow at vertex " + std::to_string(v));

    AuxiliaryGraph aux = build_auxiliary_graph(gx, tx, phix);
    std::vector<EdgeId> m = maximum_matching(aux.h);
    if (!is_perfect_matching(aux.h, m))
        throw BugReport("z3flow_to_4flow: auxiliary graph of the expansion has no perfect matching");
    EdgeFunction psix = lift_to_4preflow(gx, tx, phix, m);

    EdgeFunction psi;
    psi.tag = Mod::integers;
    for (const Edge& e : g.edges()) psi.set(e.id, psix.at(e.id));
    for (auto& [v, x] : boundary(g, t, psi))
        if (x != 0) throw BugReport("z3flow_to_4flow: restriction is not a flow at vertex " + std::to_string(v));
    for (const Edge& e : g.edges())
        if (canon3(psi.at(e.id)) != phi.at(e.id))
            throw BugReport("z3flow_to_4flow: congruence lost on edge " + std::to_string(e.id));
    return psi;
}

// The matching 2-preflow: +-1 on every subdivided (special or even-ordinary)
// starred cycle, zero boundary off the subdivision vertices and
// -2 * boundary(psi) at each of them.
inline EdgeFunction build_tau_2preflow(const SubdividedInstance& inst, const Orientation& t,
                                       const EdgeFunction& psi) {
    const SignedGraph& gS = inst.g_star;
    EdgeFunction tau;
    tau.tag = Mod::integers;
    for (const Edge& e : gS.edges()) tau.set(e.id, 0);
    for (const auto& [entry, x] : inst.x_map) {
        int dpsi = boundary_at(gS, t, psi, x);
        if (dpsi != 1 && dpsi != -1)
            throw PreconditionError("build_tau_2preflow: boundary of psi at x" + std::to_string(entry) +
                                    " is " + std::to_string(dpsi) + ", expected +-1");
        const Cycle& c = inst.list_star.entries[entry].gc.cycle;
        int closing = 0;
        std::map<EdgeId, int> circ = detail::unit_circulation(gS, t, c, x, &closing);
        int target = -2 * dpsi;
        if (closing != target) {
            for (auto& [e, a] : circ) a = -a;
            closing = -closing;
        }
        if (closing != target)
            throw BugReport("build_tau_2preflow: required boundary " + std::to_string(target) +
                            " unattainable on entry " + std::to_string(entry));
        for (auto& [e, a] : circ) tau.set(e, a);
    }
    return tau;
}

// ---------------------------------------------------------------------------
// Flow admissibility
// ---------------------------------------------------------------------------

enum class Admissibility { admissible, not_admissible, undecided };

struct AdmissibilityResult {
    Admissibility verdict = Admissibility::undecided;
    std::string reason;
    bool admissible() const { return verdict == Admissibility::admissible; }
};

inline bool has_two_disjoint_negative_cycles(const SignedGraph& g) {
    std::vector<Cycle> negs = negative_cycles(g);
    for (size_t i = 0; i < negs.size(); ++i) {
        std::set<VertexId> vi(negs[i].verts.begin(), negs[i].verts.end());
        for (size_t j = i + 1; j < negs.size(); ++j) {
            bool disjoint = true;
            for (VertexId v : negs[j].verts)
                if (vi.count(v)) {
                    disjoint = false;
                    break;
                }
            if (disjoint) return true;
        }
    }
    return false;
}

// Minimum number of negative edges over the switching class.
inline int signature_epsilon(const SignedGraph& g) {
    std::vector<VertexId> free;
    std::set<VertexId> roots;
    for (const auto& comp : components(g)) roots.insert(*comp.begin());
    for (VertexId v : g.vertices())
        if (!roots.count(v)) free.push_back(v);
    if (free.size() > 25) throw PreconditionError("signature_epsilon: too many vertices");
    int best = g.edge_count() + 1;
    for (long long mask = 0; mask < (1LL << free.size()); ++mask) {
        std::set<VertexId> x;
        for (size_t i = 0; i < free.size(); ++i)
            if (mask & (1LL << i)) x.insert(free[i]);
        int neg = 0;
        for (const Edge& e : g.edges()) {
            bool crosses = (x.count(e.u) > 0) != (x.count(e.v) > 0);
            if ((crosses ? -e.sign : e.sign) == -1) ++neg;
        }
        best = std::min(best, neg);
    }
    return best;
}

// Decision ladder: a disjoint negative cycle pair certifies admissibility
// outright (a bridgeless signature with two disjoint negative cycles cannot
// be switched down to a single negative edge); small instances fall back to
// the epsilon != 1 characterization; anything else is undecided.
inline AdmissibilityResult is_flow_admissible(const SignedGraph& g) {
    if (!g.connected()) throw PreconditionError("is_flow_admissible: graph is not connected");
    if (!bridges(g).empty()) throw PreconditionError("is_flow_admissible: bridge present");
    if (has_two_disjoint_negative_cycles(g))
        return {Admissibility::admissible, "two vertex-disjoint negative cycles"};
    if (g.vertex_count() <= 16) {
        int eps = signature_epsilon(g);
        if (eps == 1) return {Admissibility::not_admissible, "signature reduces to a single negative edge"};
        return {Admissibility::admissible, "epsilon = " + std::to_string(eps)};
    }
    return {Admissibility::undecided, "no disjoint negative pair and too large for switching enumeration"};
}

// ---------------------------------------------------------------------------
// Full pipeline
// ---------------------------------------------------------------------------

struct PipelineTrace {
    std::vector<std::string> lines;
    void add(std::string s) { lines.push_back(std::move(s)); }
};

struct Construct8Outcome {
    enum class Kind { constructed, delegated } kind = Kind::constructed;
    FlowCertificate certificate;
    int delegated_k = 0; // set when kind == delegated
};

namespace detail {

inline std::string describe_entry(const CycleList::Entry& en) {
    std::string s = std::string(to_string(en.cls)) + " ";
    if (en.gc.is_cycle()) {
        s += "cycle [";
        for (VertexId v : en.gc.cycle.verts) s += std::to_string(v) + " ";
        s += "]";
    } else {
        s += "vertex " + std::to_string(en.gc.vertex);
    }
    return s;
}

} // namespace detail

// Constructs a verified nowhere-zero 8-flow on a flow-admissible cyclically
// 5-edge-connected cubic signed graph. Inputs without two vertex-disjoint
// negative cycles are delegated to the exhaustive oracle (k <= 6).
inline Construct8Outcome construct_8flow(const SignedGraph& g, const OracleBudget& budget = {},
                                         PipelineTrace* trace = nullptr) {
    if (!g.is_cubic()) throw PreconditionError("construct_8flow: graph is not cubic");
    auto cec = cyclic_edge_connectivity(g);
    if (cec && *cec < 5)
        throw PreconditionError("construct_8flow: cyclic edge connectivity " + std::to_string(*cec) +
                                " < 5");
    AdmissibilityResult adm = is_flow_admissible(g);
    if (adm.verdict == Admissibility::not_admissible)
        throw PreconditionError("construct_8flow: not flow-admissible (" + adm.reason + ")");
    if (adm.verdict == Admissibility::undecided)
        throw PreconditionError("construct_8flow: admissibility undecided (" + adm.reason + ")");

    if (!has_two_disjoint_negative_cycles(g)) {
        if (trace) trace->add("no two vertex-disjoint negative cycles: delegating to the oracle (k <= 6)");
        FlowNumberResult fr = oracle_flow_number(g, 6, budget);
        if (fr.kind == FlowNumberResult::Kind::timeout)
            throw BudgetExceeded("construct_8flow: oracle delegation exceeded its budget");
        if (fr.kind == FlowNumberResult::Kind::none)
            throw BugReport("construct_8flow: admissible graph without disjoint negative cycles has no "
                            "6-flow: " +
                            to_debug_string(g));
        if (trace) trace->add("oracle found a nowhere-zero " + std::to_string(fr.flow_number) + "-flow");
        Construct8Outcome out;
        out.kind = Construct8Outcome::Kind::delegated;
        out.delegated_k = fr.flow_number;
        out.certificate = std::move(*fr.certificate);
        return out;
    }

    CycleList cl = build_cycle_list(g);
    if (trace) {
        trace->add("cycle list (" + std::to_string(cl.entries.size()) + " entries):");
        for (const auto& en : cl.entries) trace->add("  " + detail::describe_entry(en));
    }
    SubdividedInstance inst = subdivide_for_parity(g, cl);
    if (trace) {
        std::string xs = "g*: " + std::to_string(inst.g_star.vertex_count()) + " vertices, subdivision x:";
        for (auto& [k, x] : inst.x_map) xs += " entry" + std::to_string(k) + "->" + std::to_string(x);
        trace->add(xs);
    }
    Orientation tS = canonical_orientation(inst.g_star);
    EdgeFunction phi = construct_z3_preflow(inst, tS);
    if (trace) {
        std::string s = "z3 preflow:";
        for (const Edge& e : inst.g_star.edges()) s += " " + std::to_string(e.id) + "=" + std::to_string(phi.at(e.id));
        trace->add(s);
    }
    AuxiliaryGraph aux = build_auxiliary_graph(inst.g_star, tS, phi);
    std::vector<EdgeId> m = maximum_matching(aux.h);
    if (!is_perfect_matching(aux.h, m))
        throw BugReport("construct_8flow: auxiliary graph has no perfect matching: " + to_debug_string(g));
    if (trace)
        trace->add("auxiliary graph: " + std::to_string(aux.h.vertex_count()) + " vertices, " +
                   std::to_string(aux.gadgets.size()) + " gadgets, perfect matching of " +
                   std::to_string(m.size()));
    EdgeFunction psi = lift_to_4preflow(inst.g_star, tS, phi, m);
    if (trace) {
        std::string s = "4-preflow psi:";
        for (const Edge& e : inst.g_star.edges()) s += " " + std::to_string(e.id) + "=" + std::to_string(psi.at(e.id));
        trace->add(s);
    }
    EdgeFunction tau = build_tau_2preflow(inst, tS, psi);
    if (trace) {
        std::string s = "2-preflow tau:";
        for (const Edge& e : inst.g_star.edges()) s += " " + std::to_string(e.id) + "=" + std::to_string(tau.at(e.id));
        trace->add(s);
    }

    EdgeFunction fstar;
    fstar.tag = Mod::integers;
    for (const Edge& e : inst.g_star.edges()) fstar.set(e.id, tau.at(e.id) + 2 * psi.at(e.id));

    // A positive starred cycle may carry psi = 0 edges where tau is silent;
    // a +-1 circulation (boundary-free, the cycle is positive) clears them.
    for (const auto& en : inst.list_star.entries) {
        if (en.cls != CycleClass::positive || !en.gc.is_cycle()) continue;
        bool has_zero = false;
        for (EdgeId e : en.gc.cycle.edges)
            if (fstar.at(e) == 0) has_zero = true;
        if (!has_zero) continue;
        int closing = 0;
        auto circ = detail::unit_circulation(inst.g_star, tS, en.gc.cycle, en.gc.cycle.verts[0], &closing);
        if (closing != 0)
            throw BugReport("construct_8flow: circulation on a positive cycle failed to close");
        for (auto& [e, a] : circ) fstar.set(e, fstar.at(e) + a);
        if (trace) trace->add("added a unit circulation on a positive cycle to clear zeros");
    }

    for (const Edge& e : inst.g_star.edges()) {
        int x = fstar.at(e.id);
        if (x == 0 || x > 7 || x < -7)
            throw BugReport("construct_8flow: tau + 2psi out of range on edge " + std::to_string(e.id));
    }
    for (auto& [v, x] : boundary(inst.g_star, tS, fstar))
        if (x != 0) throw BugReport("construct_8flow: tau + 2psi not a flow at vertex " + std::to_string(v));

    // Contract the subdivision vertices: equal throughput lets the original
    // edge carry the value with the outer half-edge directions.
    FlowCertificate cert;
    cert.values.tag = Mod::integers;
    cert.bound_k = 8;
    cert.nowhere_zero = true;
    std::map<EdgeId, const SubdividedInstance::Subdivision*> subdivided;
    for (const auto& sd : inst.subdivisions) subdivided[sd.original_edge] = &sd;
    for (const Edge& e : g.edges()) {
        auto it = subdivided.find(e.id);
        if (it == subdivided.end()) {
            const Edge& es = inst.g_star.edge(e.id);
            cert.values.set(e.id, fstar.at(e.id));
            cert.orientation.tau[e.id] = {tS.at(es, es.u), tS.at(es, es.v)};
            continue;
        }
        const auto& sd = *it->second;
        const Edge& pu = inst.g_star.edge(sd.part_u);
        const Edge& pv = inst.g_star.edge(sd.part_v);
        int fu = fstar.at(sd.part_u), fv = fstar.at(sd.part_v);
        int tau_u = tS.at(pu, e.u);
        int tau_v;
        if (fv == fu) {
            tau_v = tS.at(pv, e.v);
        } else if (fv == -fu) {
            tau_v = -tS.at(pv, e.v); // flip the v-side part
        } else {
            throw BugReport("construct_8flow: unequal throughput at subdivision vertex " +
                            std::to_string(sd.x));
        }
        if (tau_u * tau_v != -e.sign)
            throw BugReport("construct_8flow: contracted orientation invalid on edge " + std::to_string(e.id));
        cert.orientation.tau[e.id] = {tau_u, tau_v};
        cert.values.set(e.id, fu);
    }
    for (auto& [v, x] : boundary(g, cert.orientation, cert.values)) cert.report[v] = x;
    VerifyReport vr = verify_flow(g, cert, 8, true);
    if (!vr.ok) {
        std::string msg = "construct_8flow: certificate failed verification:";
        for (const auto& s : vr.violations) msg += "\n  " + s;
        throw BugReport(msg);
    }
    if (trace) trace->add("verified nowhere-zero 8-flow on the input graph");
    Construct8Outcome out;
    out.kind = Construct8Outcome::Kind::constructed;
    out.certificate = std::move(cert);
    return out;
}

} // namespace sgf
