#pragma once

// The ordered generalized-cycle decomposition: construction, the seven-
// condition validator, and the parity subdivisions producing the starred
// instance the preflow construction runs on.

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cycle_search.hpp"
#include "cycles.hpp"
#include "graph.hpp"

namespace sgf {

enum class CycleClass { positive, ordinary, special };

inline const char* to_string(CycleClass c) {
    switch (c) {
        case CycleClass::positive: return "positive";
        case CycleClass::ordinary: return "ordinary";
        case CycleClass::special: return "special";
    }
    return "?";
}

struct CycleList {
    struct Entry {
        GeneralizedCycle gc;
        CycleClass cls;
    };
    std::vector<Entry> entries;
};

struct ConditionReport {
    bool pass = true;
    std::string witness;
};

// cond[0] is structural well-formedness (entries are cycles/vertices of the
// host with classes matching their signs); cond[1..7] are the numbered list
// conditions. The validator never throws.
struct CycleListReport {
    std::array<ConditionReport, 8> cond;
    bool all_pass() const {
        for (const auto& c : cond)
            if (!c.pass) return false;
        return true;
    }
    std::string summary() const {
        std::string s;
        for (size_t i = 0; i < cond.size(); ++i) {
            s += "condition " + std::to_string(i) + ": " + (cond[i].pass ? "pass" : "FAIL");
            if (!cond[i].pass) s += " (" + cond[i].witness + ")";
            s += "\n";
        }
        return s;
    }
};

inline int edges_between(const SignedGraph& g, const std::set<VertexId>& a, const std::set<VertexId>& b) {
    int c = 0;
    for (const Edge& e : g.edges()) {
        bool au = a.count(e.u), av = a.count(e.v), bu = b.count(e.u), bv = b.count(e.v);
        if ((au && bv) || (av && bu)) ++c;
    }
    return c;
}

inline CycleListReport validate_cycle_list(const SignedGraph& g, const CycleList& cl) {
    CycleListReport r;
    auto fail = [&](int i, const std::string& w) {
        if (r.cond[i].pass) {
            r.cond[i].pass = false;
            r.cond[i].witness = w;
        }
    };

    for (size_t k = 0; k < cl.entries.size(); ++k) {
        const auto& en = cl.entries[k];
        if (en.gc.is_cycle()) {
            if (!is_valid_cycle(g, en.gc.cycle)) {
                fail(0, "entry " + std::to_string(k) + " is not a cycle of the host");
                continue;
            }
            int s = cycle_sign(g, en.gc.cycle);
            if (en.cls == CycleClass::positive && s != 1)
                fail(0, "entry " + std::to_string(k) + " classed positive but has sign -1");
            if ((en.cls == CycleClass::ordinary || en.cls == CycleClass::special) && s != -1)
                fail(0, "entry " + std::to_string(k) + " classed " + to_string(en.cls) + " but has sign +1");
        } else {
            if (!g.has_vertex(en.gc.vertex))
                fail(0, "entry " + std::to_string(k) + " names a vertex outside the host");
            if (en.cls != CycleClass::positive)
                fail(0, "single-vertex entry " + std::to_string(k) + " must be classed positive");
        }
    }

    // 1: vertex-disjoint and covering.
    std::map<VertexId, int> owner;
    for (size_t k = 0; k < cl.entries.size(); ++k)
        for (VertexId v : cl.entries[k].gc.sorted_verts()) {
            auto [it, fresh] = owner.insert({v, static_cast<int>(k)});
            if (!fresh)
                fail(1, "vertex " + std::to_string(v) + " appears in entries " +
                            std::to_string(it->second) + " and " + std::to_string(k));
        }
    for (VertexId v : g.vertices())
        if (!owner.count(v)) fail(1, "vertex " + std::to_string(v) + " not covered");

    // 2: first entry special.
    if (cl.entries.empty())
        fail(2, "empty list");
    else if (cl.entries.front().cls != CycleClass::special)
        fail(2, "first entry is " + std::string(to_string(cl.entries.front().cls)));

    // 3: at most one special beyond the first.
    int extra_special = 0;
    for (size_t k = 1; k < cl.entries.size(); ++k)
        if (cl.entries[k].cls == CycleClass::special) ++extra_special;
    if (extra_special > 1) fail(3, std::to_string(extra_special) + " special entries beyond the first");

    // 4: ordinary entries induced in the host.
    for (size_t k = 0; k < cl.entries.size(); ++k) {
        const auto& en = cl.entries[k];
        if (en.cls == CycleClass::ordinary && en.gc.is_cycle() && is_valid_cycle(g, en.gc.cycle) &&
            !is_induced_cycle(g, en.gc.cycle))
            fail(4, "ordinary entry " + std::to_string(k) + " has a chord");
    }

    // 5 and 6: edge counts to earlier / later entries.
    std::vector<std::set<VertexId>> vsets;
    for (const auto& en : cl.entries) vsets.push_back(en.gc.vertex_set());
    for (size_t k = 0; k < cl.entries.size(); ++k) {
        std::set<VertexId> earlier, later;
        for (size_t i = 0; i < k; ++i) earlier.insert(vsets[i].begin(), vsets[i].end());
        for (size_t i = k + 1; i < cl.entries.size(); ++i) later.insert(vsets[i].begin(), vsets[i].end());
        if (cl.entries[k].cls == CycleClass::positive && k > 0) {
            int c = edges_between(g, vsets[k], earlier);
            if (c < 2)
                fail(5, "positive entry " + std::to_string(k) + " has " + std::to_string(c) +
                            " edges to earlier entries");
        }
        if (cl.entries[k].cls == CycleClass::ordinary) {
            int c = edges_between(g, vsets[k], later);
            if (c > 1)
                fail(6, "ordinary entry " + std::to_string(k) + " has " + std::to_string(c) +
                            " edges to later entries");
        }
    }

    // 7: even-length ordinary count plus special count is even.
    int even_ord = 0, special = 0;
    for (const auto& en : cl.entries) {
        if (en.cls == CycleClass::special) ++special;
        if (en.cls == CycleClass::ordinary && en.gc.is_cycle() && en.gc.cycle.length() % 2 == 0) ++even_ord;
    }
    if ((even_ord + special) % 2 != 0)
        fail(7, std::to_string(even_ord) + " even ordinary + " + std::to_string(special) + " special is odd");

    return r;
}

namespace detail {

inline int count_even_negative_cycles(const SignedGraph& g) {
    int c = 0;
    for (const Cycle& n : negative_cycles(g))
        if (n.length() % 2 == 0) ++c;
    return c;
}

} // namespace detail

// Builds the decomposition: seed via initial_special, grow while an
// unbalanced theta survives vertex deletion, resolve the last theta through
// the fragile pair with the parity bookkeeping, then exhaust with usable
// cycles (negative picks become ordinary).
inline CycleList build_cycle_list(const SignedGraph& g) {
    if (!g.is_cubic()) throw PreconditionError("build_cycle_list: graph is not cubic");
    auto cec = cyclic_edge_connectivity(g);
    if (cec && *cec < 5)
        throw PreconditionError("build_cycle_list: cyclic edge connectivity " + std::to_string(*cec) + " < 5");

    CycleList out;
    InitialSpecial seed = initial_special(g); // checks the disjoint negative cycle pair
    out.entries.push_back({GeneralizedCycle::of_cycle(g, seed.c1), CycleClass::special});
    std::set<VertexId> removed = out.entries.back().gc.vertex_set();
    if (seed.kind == InitialSpecial::Kind::spanning_pair) {
        out.entries.push_back({GeneralizedCycle::of_cycle(g, *seed.c2), CycleClass::special});
        CycleListReport rep = validate_cycle_list(g, out);
        if (!rep.all_pass())
            throw BugReport("build_cycle_list: spanning pair fails validation\n" + rep.summary());
        return out;
    }

    SignedGraph rem = g.delete_vertices(removed);
    int specials = 1, even_ordinary = 0;
    auto push = [&](const GeneralizedCycle& gc, CycleClass cls) {
        out.entries.push_back({gc, cls});
        if (cls == CycleClass::special) ++specials;
        if (cls == CycleClass::ordinary && gc.is_cycle() && gc.cycle.length() % 2 == 0) ++even_ordinary;
        std::set<VertexId> vs = gc.vertex_set();
        rem = rem.delete_vertices(vs);
    };

    while (has_unbalanced_theta(rem)) {
        bool advanced = false;
        for (const GeneralizedCycle& cand : usable_cycles(rem)) {
            if (has_unbalanced_theta(rem.delete_vertices(cand.vertex_set()))) {
                bool neg = cand.is_cycle() && *cand.sign == -1;
                push(cand, neg ? CycleClass::ordinary : CycleClass::positive);
                advanced = true;
                break;
            }
        }
        if (advanced) continue;

        // Last unbalanced theta: the fragile pair decides, the parity
        // bookkeeping picks which of the two cycles enters the list.
        auto [c0, c1] = find_fragile_pair(rem);
        auto parity_even = [&](const GeneralizedCycle& pick, bool as_special) {
            SignedGraph prospect = rem.delete_vertices(pick.vertex_set());
            int total = specials + (as_special ? 1 : 0) + even_ordinary + detail::count_even_negative_cycles(prospect);
            return total % 2 == 0;
        };
        const GeneralizedCycle* chosen = nullptr;
        CycleClass cls = CycleClass::positive;
        if (parity_even(c0, false)) {
            chosen = &c0;
            cls = CycleClass::positive;
        } else if (parity_even(c1, true)) {
            chosen = &c1;
            cls = CycleClass::special;
        } else {
            throw BugReport("build_cycle_list: neither fragile choice fixes the parity in " +
                            to_debug_string(rem));
        }
        SignedGraph after = rem.delete_vertices(chosen->vertex_set());
        if (has_unbalanced_theta(after))
            throw BugReport("build_cycle_list: fragile choice leaves an unbalanced theta");
        push(*chosen, cls);
    }

    while (rem.vertex_count() > 0) {
        GeneralizedCycle c = find_usable_cycle(rem);
        bool neg = c.is_cycle() && *c.sign == -1;
        push(c, neg ? CycleClass::ordinary : CycleClass::positive);
    }

    CycleListReport rep = validate_cycle_list(g, out);
    if (!rep.all_pass())
        throw BugReport("build_cycle_list: constructed list fails validation\n" + rep.summary() +
                        to_debug_string(g));
    return out;
}

// The starred instance: one edge subdivided on every special or even-length
// ordinary entry, nothing else touched.
struct SubdividedInstance {
    SignedGraph g_star;
    CycleList list_star;                 // cycles living in g_star
    std::map<int, VertexId> x_map;       // entry index -> its degree-2 vertex
    struct Subdivision {
        int entry;
        EdgeId original_edge; // id kept by the u-side part
        EdgeId part_u;
        EdgeId part_v;
        VertexId x;
    };
    std::vector<Subdivision> subdivisions;
};

inline SubdividedInstance subdivide_for_parity(const SignedGraph& g, const CycleList& cl) {
    CycleListReport rep = validate_cycle_list(g, cl);
    if (!rep.all_pass())
        throw PreconditionError("subdivide_for_parity: invalid cycle list\n" + rep.summary());

    SubdividedInstance inst;
    inst.g_star = g;
    inst.list_star = cl;
    for (size_t k = 0; k < cl.entries.size(); ++k) {
        const auto& en = cl.entries[k];
        bool needs = en.cls == CycleClass::special ||
                     (en.cls == CycleClass::ordinary && en.gc.cycle.length() % 2 == 0);
        if (!needs) continue;
        EdgeId target = *std::min_element(en.gc.cycle.edges.begin(), en.gc.cycle.edges.end());
        const Edge before = inst.g_star.edge(target);
        auto [g2, x] = subdivide_edge(inst.g_star, target);
        inst.g_star = std::move(g2);
        EdgeId part_v = inst.g_star.max_edge_id();
        inst.subdivisions.push_back({static_cast<int>(k), target, target, part_v, x});
        inst.x_map[static_cast<int>(k)] = x;

        // Re-thread the starred cycle through x.
        Cycle& c = inst.list_star.entries[k].gc.cycle;
        const int L = c.length();
        Cycle c2;
        for (int i = 0; i < L; ++i) {
            c2.verts.push_back(c.verts[i]);
            VertexId nxt = c.verts[(i + 1) % L];
            if (c.edges[i] == target) {
                c2.verts.push_back(x);
                if (c.verts[i] == before.u && nxt == before.v) {
                    c2.edges.push_back(target);
                    c2.edges.push_back(part_v);
                } else {
                    c2.edges.push_back(part_v);
                    c2.edges.push_back(target);
                }
            } else {
                c2.edges.push_back(c.edges[i]);
            }
        }
        if (!is_valid_cycle(inst.g_star, c2))
            throw BugReport("subdivide_for_parity: starred cycle failed to re-thread");
        inst.list_star.entries[k].gc = GeneralizedCycle::of_cycle(inst.g_star, c2);
    }

    for (const auto& en : inst.list_star.entries)
        if (en.cls == CycleClass::ordinary && en.gc.cycle.length() % 2 == 0)
            throw BugReport("subdivide_for_parity: an ordinary starred cycle stayed even");
    int deg2 = 0;
    for (VertexId v : inst.g_star.vertices())
        if (inst.g_star.degree(v) == 2) ++deg2;
    if (deg2 % 2 != 0) throw BugReport("subdivide_for_parity: odd number of degree-2 vertices");
    return inst;
}

} // namespace sgf
