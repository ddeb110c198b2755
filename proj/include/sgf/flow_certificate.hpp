#pragma once

// Flow certificates and the independent verifier. The verifier trusts
// nothing: it rechecks the orientation, the value bounds, the boundary and
// zero-freeness straight from the definitions.

#include <map>
#include <string>
#include <vector>

#include "graph.hpp"

namespace sgf {

struct FlowCertificate {
    Orientation orientation;
    EdgeFunction values; // integers
    int bound_k = 0;
    bool nowhere_zero = false;
    std::map<VertexId, int> report; // per-vertex boundary residues
};

struct VerifyReport {
    bool ok = true;
    std::vector<std::string> violations;
    void fail(const std::string& v) {
        ok = false;
        violations.push_back(v);
    }
};

inline VerifyReport verify_flow(const SignedGraph& g, const FlowCertificate& cert, int k,
                                bool require_nowhere_zero) {
    VerifyReport r;
    for (const Edge& e : g.edges()) {
        auto it = cert.orientation.tau.find(e.id);
        if (it == cert.orientation.tau.end()) {
            r.fail("edge " + std::to_string(e.id) + ": orientation missing");
            continue;
        }
        auto [tu, tv] = it->second;
        if ((tu != 1 && tu != -1) || (tv != 1 && tv != -1) || tu * tv != -e.sign)
            r.fail("edge " + std::to_string(e.id) + ": tau(h)tau(h') != -sigma");
    }
    for (const Edge& e : g.edges()) {
        if (!cert.values.defined(e.id)) {
            r.fail("edge " + std::to_string(e.id) + ": no value");
            continue;
        }
        int x = cert.values.at(e.id);
        if (x < -(k - 1) || x > k - 1)
            r.fail("edge " + std::to_string(e.id) + ": |" + std::to_string(x) + "| > " + std::to_string(k - 1));
        if (require_nowhere_zero && x == 0) r.fail("edge " + std::to_string(e.id) + ": zero value");
    }
    if (r.ok) {
        auto b = boundary(g, cert.orientation, cert.values);
        for (auto& [v, x] : b)
            if (x != 0)
                r.fail("vertex " + std::to_string(v) + ": boundary " + std::to_string(x));
    }
    return r;
}

} // namespace sgf
