#pragma once

// The on-disk text format, fixture generators with documented canonical
// labellings, and DOT export.
//
//   # comment lines start with '#'
//   sg <n> <m>
//   <u> <v> <+|->          (m edge lines, vertices 0-indexed)
//   or                     (optional half-edge direction block)
//   <tau_u> <tau_v>        (m lines, each +-1 with tau_u*tau_v = -sigma)
//   flow <k>               (optional value block)
//   <int>                  (m lines)

#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "flow_certificate.hpp"
#include "graph.hpp"

namespace sgf {

struct ParsedDocument {
    SignedGraph graph;
    std::optional<Orientation> orientation;
    std::optional<EdgeFunction> flow;
    int flow_k = 0;
};

namespace detail {

struct LineReader {
    std::vector<std::string> lines;
    size_t next = 0;
    explicit LineReader(const std::string& text) {
        std::string cur;
        for (char ch : text) {
            if (ch == '\n') {
                lines.push_back(cur);
                cur.clear();
            } else
                cur.push_back(ch);
        }
        if (!cur.empty()) lines.push_back(cur);
    }
    // next content line (1-based index returned), skipping blanks and comments
    std::optional<std::pair<int, std::string>> take() {
        while (next < lines.size()) {
            const std::string& raw = lines[next];
            ++next;
            size_t i = raw.find_first_not_of(" \t\r");
            if (i == std::string::npos || raw[i] == '#') continue;
            return std::make_pair(static_cast<int>(next), raw.substr(i));
        }
        return std::nullopt;
    }
};

} // namespace detail

inline ParsedDocument parse_sg(const std::string& text) {
    detail::LineReader rd(text);
    auto header = rd.take();
    if (!header) throw ParseError(1, 1, "missing 'sg <n> <m>' header");
    std::istringstream hs(header->second);
    std::string tag;
    int n = -1, m = -1;
    hs >> tag >> n >> m;
    if (tag != "sg" || hs.fail() || n < 0 || m < 0)
        throw ParseError(header->first, 1, "expected 'sg <n> <m>'");

    std::vector<std::tuple<VertexId, VertexId, int>> edges;
    std::vector<int> degree(n, 0);
    for (int i = 0; i < m; ++i) {
        auto ln = rd.take();
        if (!ln) throw ParseError(static_cast<int>(rd.lines.size()), 1,
                                  "expected " + std::to_string(m) + " edge lines, got " + std::to_string(i));
        std::istringstream es(ln->second);
        int u, v;
        std::string sgn;
        es >> u >> v >> sgn;
        if (es.fail() || (sgn != "+" && sgn != "-"))
            throw ParseError(ln->first, 1, "expected '<u> <v> <+|->'");
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw ParseError(ln->first, 1, "vertex out of range [0," + std::to_string(n - 1) + "]");
        if (u == v) throw ParseError(ln->first, 1, "loop at vertex " + std::to_string(u) + " rejected");
        if (++degree[u] > 3 || ++degree[v] > 3)
            throw ParseError(ln->first, 1, "degree above 3 at an end of this edge");
        edges.push_back({u, v, sgn == "+" ? 1 : -1});
    }
    ParsedDocument doc;
    doc.graph = SignedGraph::from_edges(n, edges);

    auto block = rd.take();
    if (block && block->second.rfind("or", 0) == 0 && (block->second.size() == 2 || block->second[2] == ' ')) {
        Orientation t;
        for (int i = 0; i < m; ++i) {
            auto ln = rd.take();
            if (!ln) throw ParseError(static_cast<int>(rd.lines.size()), 1, "orientation block truncated");
            std::istringstream os(ln->second);
            int tu, tv;
            os >> tu >> tv;
            if (os.fail() || (tu != 1 && tu != -1) || (tv != 1 && tv != -1))
                throw ParseError(ln->first, 1, "expected two values in {-1,1}");
            if (tu * tv != -doc.graph.edge(i).sign)
                throw ParseError(ln->first, 1, "tau(h)tau(h') must equal -sigma for edge " + std::to_string(i));
            t.tau[i] = {tu, tv};
        }
        doc.orientation = std::move(t);
        block = rd.take();
    }
    if (block) {
        std::istringstream fs(block->second);
        std::string tag2;
        int k = 0;
        fs >> tag2 >> k;
        if (tag2 != "flow" || fs.fail() || k < 1)
            throw ParseError(block->first, 1, "expected 'flow <k>'");
        EdgeFunction f;
        f.tag = Mod::integers;
        for (int i = 0; i < m; ++i) {
            auto ln = rd.take();
            if (!ln) throw ParseError(static_cast<int>(rd.lines.size()), 1, "flow block truncated");
            std::istringstream vs(ln->second);
            long long x;
            vs >> x;
            if (vs.fail()) throw ParseError(ln->first, 1, "expected an integer value");
            f.set(i, x);
        }
        doc.flow = std::move(f);
        doc.flow_k = k;
        block = rd.take();
    }
    if (block) throw ParseError(block->first, 1, "unexpected trailing content: '" + block->second + "'");
    return doc;
}

// Canonical emission; vertices are re-indexed to 0..n-1 in id order when the
// graph's ids are not already contiguous.
inline std::string emit_sg(const SignedGraph& g, const Orientation* t = nullptr,
                           const EdgeFunction* flow = nullptr, int flow_k = 0) {
    std::map<VertexId, int> ix;
    for (VertexId v : g.vertices()) ix[v] = static_cast<int>(ix.size());
    std::ostringstream out;
    out << "sg " << g.vertex_count() << " " << g.edge_count() << "\n";
    for (const Edge& e : g.edges())
        out << ix.at(e.u) << " " << ix.at(e.v) << " " << (e.sign > 0 ? '+' : '-') << "\n";
    if (t) {
        out << "or\n";
        for (const Edge& e : g.edges()) out << t->at(e, e.u) << " " << t->at(e, e.v) << "\n";
    }
    if (flow) {
        out << "flow " << flow_k << "\n";
        for (const Edge& e : g.edges()) out << flow->at(e.id) << "\n";
    }
    return out.str();
}

namespace detail {

inline SignedGraph apply_negatives(int n, std::vector<std::tuple<VertexId, VertexId, int>> edges,
                                   const std::vector<EdgeId>& negatives) {
    for (EdgeId id : negatives) {
        if (id < 0 || id >= static_cast<EdgeId>(edges.size()))
            throw DomainError("negative edge id " + std::to_string(id) + " out of range");
        if (std::get<2>(edges[id]) == -1) throw DomainError("edge id " + std::to_string(id) + " listed twice");
        std::get<2>(edges[id]) = -1;
    }
    return SignedGraph::from_edges(n, edges);
}

} // namespace detail

// Vertices 0-4 outer cycle, 5-9 inner pentagram; edges 0-4 outer (i,i+1),
// 5-9 spokes (i,i+5), 10-14 inner (5+i, 5+(i+2) mod 5).
inline SignedGraph generate_petersen(const std::vector<EdgeId>& negatives = {}) {
    std::vector<std::tuple<VertexId, VertexId, int>> es;
    for (int i = 0; i < 5; ++i) es.push_back({i, (i + 1) % 5, 1});
    for (int i = 0; i < 5; ++i) es.push_back({i, i + 5, 1});
    for (int i = 0; i < 5; ++i) es.push_back({5 + i, 5 + ((i + 2) % 5), 1});
    return detail::apply_negatives(10, std::move(es), negatives);
}

// Hubs 0..k-1, a-ring k..2k-1, b-row 2k..3k-1, c-row 3k..4k-1. Edges: 3k
// star edges (h,a),(h,b),(h,c) per hub, then the a-ring, then the twisted
// 2k-cycle through the b and c rows.
inline SignedGraph generate_flower_snark(int k, const std::vector<EdgeId>& negatives = {}) {
    if (k < 3 || k % 2 == 0) throw DomainError("flower_snark: k must be odd and >= 3");
    std::vector<std::tuple<VertexId, VertexId, int>> es;
    auto h = [&](int i) { return i; };
    auto a = [&](int i) { return k + i; };
    auto b = [&](int i) { return 2 * k + i; };
    auto c = [&](int i) { return 3 * k + i; };
    for (int i = 0; i < k; ++i) {
        es.push_back({h(i), a(i), 1});
        es.push_back({h(i), b(i), 1});
        es.push_back({h(i), c(i), 1});
    }
    for (int i = 0; i < k; ++i) es.push_back({a(i), a((i + 1) % k), 1});
    for (int i = 0; i + 1 < k; ++i) es.push_back({b(i), b(i + 1), 1});
    for (int i = 0; i + 1 < k; ++i) es.push_back({c(i), c(i + 1), 1});
    es.push_back({b(k - 1), c(0), 1});
    es.push_back({c(k - 1), b(0), 1});
    return detail::apply_negatives(4 * k, std::move(es), negatives);
}

// Outer ring 0..k-1, inner ring k..2k-1; edges: outer ring, inner ring, rungs.
inline SignedGraph generate_prism(int k, const std::vector<EdgeId>& negatives = {}) {
    if (k < 3) throw DomainError("prism: k must be >= 3");
    std::vector<std::tuple<VertexId, VertexId, int>> es;
    for (int i = 0; i < k; ++i) es.push_back({i, (i + 1) % k, 1});
    for (int i = 0; i < k; ++i) es.push_back({k + i, k + (i + 1) % k, 1});
    for (int i = 0; i < k; ++i) es.push_back({i, k + i, 1});
    return detail::apply_negatives(2 * k, std::move(es), negatives);
}

inline SignedGraph generate_cube(const std::vector<EdgeId>& negatives = {}) {
    return generate_prism(4, negatives);
}

// Random cubic graph by stub pairing (rejection sampling), deterministic per
// seed; the listed edges become negative.
inline SignedGraph generate_random_cubic(int n, std::uint64_t seed,
                                         const std::vector<EdgeId>& negatives = {}) {
    if (n < 4 || n % 2 != 0) throw DomainError("random_cubic: n must be even and >= 4");
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::vector<int> stubs;
        for (int v = 0; v < n; ++v)
            for (int i = 0; i < 3; ++i) stubs.push_back(v);
        std::shuffle(stubs.begin(), stubs.end(), rng);
        std::vector<std::tuple<VertexId, VertexId, int>> es;
        std::set<std::pair<int, int>> seen;
        bool ok = true;
        for (size_t i = 0; i < stubs.size(); i += 2) {
            int u = stubs[i], v = stubs[i + 1];
            if (u == v || !seen.insert(std::minmax(u, v)).second) {
                ok = false;
                break;
            }
            es.push_back({u, v, 1});
        }
        if (!ok) continue;
        SignedGraph g = detail::apply_negatives(n, std::move(es), negatives);
        if (g.connected()) return g;
    }
    throw BugReport("random_cubic: rejection sampling failed to produce a simple connected graph");
}

inline SignedGraph generate(const std::string& name, int param, const std::vector<EdgeId>& negatives = {},
                            std::uint64_t seed = 0) {
    if (name == "petersen") return generate_petersen(negatives);
    if (name == "flower_snark") return generate_flower_snark(param, negatives);
    if (name == "prism") return generate_prism(param, negatives);
    if (name == "cube") return generate_cube(negatives);
    if (name == "random_cubic") return generate_random_cubic(param, seed, negatives);
    throw DomainError("unknown generator '" + name + "'");
}

// DOT text: negative edges dashed; with a certificate each edge is labelled
// with its value and the half-edge directions at its two ends.
inline std::string export_dot(const SignedGraph& g, const FlowCertificate* cert = nullptr) {
    std::ostringstream out;
    out << "graph signed {\n  node [shape=circle];\n";
    for (VertexId v : g.vertices()) out << "  " << v << ";\n";
    for (const Edge& e : g.edges()) {
        out << "  " << e.u << " -- " << e.v << " [";
        if (e.sign < 0) out << "style=dashed, ";
        if (cert) {
            int tu = cert->orientation.at(e, e.u);
            int tv = cert->orientation.at(e, e.v);
            out << "label=\"" << cert->values.at(e.id) << " (" << (tu > 0 ? "+" : "-") << ","
                << (tv > 0 ? "+" : "-") << ")\", ";
        }
        out << "id=" << e.id << "];\n";
    }
    out << "}\n";
    return out.str();
}

} // namespace sgf
