// Command-line driver: inspect / construct / verify / oracle / generate /
// export over the signed-graph text format. Exit codes: 0 success, 1 domain
// failure (verification failed, not admissible, budget), 2 usage or parse
// errors.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "sgf/sgf.hpp"

namespace {

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw sgf::DomainError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw sgf::DomainError("cannot open '" + path + "' for writing");
    out << text;
}

int run_inspect(const std::string& in) {
    sgf::ParsedDocument doc = sgf::parse_sg(read_input(in));
    const sgf::SignedGraph& g = doc.graph;
    std::cout << "vertices: " << g.vertex_count() << "\nedges: " << g.edge_count() << "\n";
    std::cout << "cubic: " << (g.is_cubic() ? "yes" : "no") << "\n";
    sgf::BalanceCertificate bal = sgf::is_balanced(g);
    if (bal.balanced()) {
        std::cout << "balanced: yes\n";
    } else {
        std::cout << "balanced: no (negative cycle:";
        for (sgf::VertexId v : bal.witness_cycle->verts) std::cout << " " << v;
        std::cout << ")\n";
    }
    std::cout << "vertex connectivity: " << sgf::vertex_connectivity(g) << "\n";
    if (g.is_cubic() && g.connected()) {
        auto cec = sgf::cyclic_edge_connectivity(g);
        std::cout << "cyclic edge connectivity: " << (cec ? std::to_string(*cec) : "infinite") << "\n";
    }
    std::cout << "two vertex-disjoint negative cycles: "
              << (sgf::has_two_disjoint_negative_cycles(g) ? "yes" : "no") << "\n";
    try {
        sgf::AdmissibilityResult adm = sgf::is_flow_admissible(g);
        const char* v = adm.verdict == sgf::Admissibility::admissible ? "yes"
                        : adm.verdict == sgf::Admissibility::not_admissible ? "no"
                                                                            : "undecided";
        std::cout << "flow-admissible: " << v << " (" << adm.reason << ")\n";
    } catch (const sgf::PreconditionError& e) {
        std::cout << "flow-admissible: n/a (" << e.what() << ")\n";
    }
    return 0;
}

int run_construct(const std::string& in, const std::string& out, bool trace, const sgf::OracleBudget& budget) {
    sgf::ParsedDocument doc = sgf::parse_sg(read_input(in));
    sgf::PipelineTrace tr;
    sgf::Construct8Outcome outcome = sgf::construct_8flow(doc.graph, budget, trace ? &tr : nullptr);
    if (trace)
        for (const auto& line : tr.lines) std::cerr << "[trace] " << line << "\n";
    const sgf::FlowCertificate& cert = outcome.certificate;
    if (outcome.kind == sgf::Construct8Outcome::Kind::delegated)
        std::cerr << "delegated to the oracle: nowhere-zero " << outcome.delegated_k << "-flow\n";
    else
        std::cerr << "constructed nowhere-zero 8-flow\n";
    write_output(out, sgf::emit_sg(doc.graph, &cert.orientation, &cert.values, cert.bound_k));
    return 0;
}

int run_verify(const std::string& in, int k_override, bool allow_zero) {
    sgf::ParsedDocument doc = sgf::parse_sg(read_input(in));
    if (!doc.orientation || !doc.flow) {
        std::cerr << "verify: input has no orientation/flow blocks\n";
        return 1;
    }
    int k = k_override > 0 ? k_override : doc.flow_k;
    sgf::FlowCertificate cert;
    cert.orientation = *doc.orientation;
    cert.values = *doc.flow;
    cert.bound_k = k;
    sgf::VerifyReport rep = sgf::verify_flow(doc.graph, cert, k, !allow_zero);
    if (rep.ok) {
        std::cout << "ok: " << (allow_zero ? "" : "nowhere-zero ") << k << "-flow verified\n";
        return 0;
    }
    for (const auto& v : rep.violations) std::cout << "violation: " << v << "\n";
    return 1;
}

int run_oracle(const std::string& in, int k, bool flow_number, int cap, const sgf::OracleBudget& budget) {
    sgf::ParsedDocument doc = sgf::parse_sg(read_input(in));
    if (flow_number) {
        sgf::FlowNumberResult r = sgf::oracle_flow_number(doc.graph, cap, budget);
        switch (r.kind) {
            case sgf::FlowNumberResult::Kind::found:
                std::cout << "flow number: " << r.flow_number << " (nodes " << r.nodes_explored << ")\n";
                return 0;
            case sgf::FlowNumberResult::Kind::none:
                std::cout << "no nowhere-zero k-flow for k <= " << cap << " (nodes " << r.nodes_explored
                          << ")\n";
                return 0;
            case sgf::FlowNumberResult::Kind::timeout:
                std::cout << "timeout after " << r.nodes_explored << " nodes\n";
                return 1;
        }
    }
    sgf::OracleResult r = sgf::oracle_flow_exists(doc.graph, k, budget);
    switch (r.kind) {
        case sgf::OracleResult::Kind::found:
            std::cout << "found: nowhere-zero " << k << "-flow (nodes " << r.nodes_explored << ")\n";
            std::cout << sgf::emit_sg(doc.graph, &r.certificate->orientation, &r.certificate->values, k);
            return 0;
        case sgf::OracleResult::Kind::none:
            std::cout << "none: no nowhere-zero " << k << "-flow (nodes " << r.nodes_explored << ")\n";
            return 0;
        case sgf::OracleResult::Kind::timeout:
            std::cout << "timeout after " << r.nodes_explored << " nodes\n";
            return 1;
    }
    return 1;
}

int run_generate(const std::string& name, int param, const std::vector<int>& negatives,
                 std::uint64_t seed, const std::string& out) {
    sgf::SignedGraph g = sgf::generate(name, param, negatives, seed);
    write_output(out, sgf::emit_sg(g));
    return 0;
}

int run_export(const std::string& in, const std::string& out) {
    sgf::ParsedDocument doc = sgf::parse_sg(read_input(in));
    if (doc.orientation && doc.flow) {
        sgf::FlowCertificate cert;
        cert.orientation = *doc.orientation;
        cert.values = *doc.flow;
        cert.bound_k = doc.flow_k;
        write_output(out, sgf::export_dot(doc.graph, &cert));
    } else {
        write_output(out, sgf::export_dot(doc.graph));
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"nowhere-zero flows on signed cubic graphs"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    long long budget_nodes = 50'000'000;
    double budget_seconds = 60.0;
    bool trace = false;
    app.add_option("--seed", seed, "seed for randomized generators");
    app.add_option("--budget-nodes", budget_nodes, "oracle node budget");
    app.add_option("--budget-seconds", budget_seconds, "oracle time budget");
    app.add_flag("--trace", trace, "log pipeline phases to stderr");

    std::string in_path = "-", out_path = "-";
    int k = 8, cap = 8, param = 5;
    bool flow_number = false, allow_zero = false;
    std::string gen_name;
    std::vector<int> negatives;

    auto* inspect = app.add_subcommand("inspect", "balance, connectivity, admissibility");
    inspect->add_option("file", in_path, "input file ('-' for stdin)");

    auto* construct = app.add_subcommand("construct", "run the 8-flow pipeline, emit a certificate");
    construct->add_option("file", in_path);
    construct->add_option("-o,--output", out_path);

    auto* verify = app.add_subcommand("verify", "check a certificate file");
    verify->add_option("file", in_path);
    verify->add_option("--k", k, "bound to verify against (default: the file's)")->default_val(0);
    verify->add_flag("--allow-zero", allow_zero, "do not require nowhere-zero");

    auto* oracle = app.add_subcommand("oracle", "exhaustive flow existence / flow number");
    oracle->add_option("file", in_path);
    oracle->add_option("--k", k, "flow bound for the existence query");
    oracle->add_flag("--flow-number", flow_number, "search the least k instead");
    oracle->add_option("--cap", cap, "cap for --flow-number");

    auto* generate = app.add_subcommand("generate", "emit a named fixture");
    generate->add_option("name", gen_name, "petersen | flower_snark | prism | cube | random_cubic")
        ->required();
    generate->add_option("--k", param, "parameter (flower_snark/prism k, random_cubic n)");
    generate->add_option("--negatives", negatives, "edge ids to make negative");
    generate->add_option("-o,--output", out_path);

    auto* exp = app.add_subcommand("export", "DOT export (labels values when present)");
    exp->add_option("file", in_path);
    exp->add_option("-o,--output", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    sgf::OracleBudget budget;
    budget.max_nodes = budget_nodes;
    budget.max_seconds = budget_seconds;

    try {
        if (inspect->parsed()) return run_inspect(in_path);
        if (construct->parsed()) return run_construct(in_path, out_path, trace, budget);
        if (verify->parsed()) return run_verify(in_path, k, allow_zero);
        if (oracle->parsed()) return run_oracle(in_path, k, flow_number, cap, budget);
        if (generate->parsed()) return run_generate(gen_name, param, negatives, seed, out_path);
        if (exp->parsed()) return run_export(in_path, out_path);
    } catch (const sgf::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const sgf::BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
