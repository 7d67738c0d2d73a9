#pragma once

// Command-line front end. Kept in a header so tests can drive it in-process.
//
//   optadj optimal <file> [--json]
//   optadj min-card <file> [--json]
//   optadj validate <file> --set X,T,R [--json]
//   optadj oracle [<file>] [--seed N --vertices n --edge-prob p --hidden-frac h] [--json]
//   optadj dump-h1 <file> [--json]
//   optadj dump-network <file> [--json]
//
// Exit status 0 whenever an answer was produced (including "no adjustment
// set exists"), 1 on input errors.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "optadj/adjustment.hpp"
#include "optadj/flow.hpp"
#include "optadj/io.hpp"
#include "optadj/optimizer.hpp"
#include "optadj/oracle.hpp"

namespace optadj {

namespace cli_detail {

using nlohmann::json;

inline std::string read_input(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(in), {}};
}

inline ParsedProblem load(const std::string& path, std::ostream& err) {
    ParsedProblem parsed = parse_problem(read_input(path));
    for (const auto& w : parsed.warnings) err << "warning: " << w << '\n';
    return parsed;
}

inline std::string braces(const VertexSet& s) {
    std::string out = "{";
    for (const auto& v : s) out += (out.size() > 1 ? ", " : "") + v;
    return out + "}";
}

inline json cost_json(const Rational& r) {
    if (r.is_integer()) return r.num();
    return r.to_double();
}

inline json set_json(const VertexSet& s) { return json(std::vector<std::string>(s.begin(), s.end())); }

inline VertexSet split_set(const std::string& text) {
    VertexSet out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto b = item.find_first_not_of(" \t");
        auto e = item.find_last_not_of(" \t");
        if (b != std::string::npos) out.insert(item.substr(b, e - b + 1));
    }
    return out;
}

inline void report_result(const AdjustmentResult& r, const FlowNetwork& n, const char* mode, bool as_json,
                          std::ostream& out) {
    if (as_json) {
        json j;
        j["mode"] = mode;
        j["exists"] = r.exists;
        j["optimal_set"] = set_json(r.optimal_set);
        j["total_cost"] = r.exists ? cost_json(r.total_cost) : json(nullptr);
        j["total_cost_exact"] = r.exists ? json(r.total_cost.to_string()) : json(nullptr);
        j["flow_value"] = r.flow_value;
        j["big_m"] = r.big_m;
        j["scale"] = r.scale;
        j["h1"] = {{"vertices", r.h1_vertices}, {"edges", r.h1_edges}};
        std::vector<std::string> cut;
        for (NodeId v : r.min_cut.members) cut.push_back(n.node_label(v));
        std::sort(cut.begin(), cut.end());
        j["min_cut"] = cut;
        out << j.dump(2) << '\n';
        return;
    }
    if (!r.exists) {
        out << "no valid adjustment set exists (max-flow " << r.flow_value << " >= big-M " << r.big_m << ")\n";
    } else {
        out << "optimal set: " << braces(r.optimal_set) << '\n';
        out << "cost: " << r.total_cost << '\n';
    }
    out << "flow value: " << Rational(r.flow_value, r.scale) << '\n';
    out << "H1: " << r.h1_vertices << " vertices, " << r.h1_edges << " edges\n";
}

inline int cmd_optimal(const std::string& file, bool unit, bool as_json, std::ostream& out, std::ostream& err) {
    ParsedProblem parsed = load(file, err);
    EfficiencyGraph e = build_h1(parsed.problem);
    if (unit) e = with_unit_costs(std::move(e));
    AdjustmentResult r = optimal_min_cost(e);
    report_result(r, build_network(e), unit ? "min-cardinality" : "min-cost", as_json, out);
    return 0;
}

inline int cmd_validate(const std::string& file, const std::string& set_text, bool as_json, std::ostream& out,
                        std::ostream& err) {
    ParsedProblem parsed = load(file, err);
    VertexSet z = split_set(set_text);
    ValidationReport rep = validate_adjustment(parsed.problem, z);
    if (as_json) {
        json j;
        j["set"] = set_json(z);
        j["status"] = to_string(rep.status);
        j["minimal"] = rep.minimal;
        j["cost"] = rep.cost ? cost_json(*rep.cost) : json(nullptr);
        j["reason"] = rep.reason;
        j["witness"] = rep.witness;
        out << j.dump(2) << '\n';
        return 0;
    }
    out << "set: " << braces(z) << '\n';
    out << "status: " << to_string(rep.status) << '\n';
    if (!rep.reason.empty()) out << "reason: " << rep.reason << '\n';
    if (!rep.witness.empty()) {
        out << "witness path:";
        for (std::size_t i = 0; i < rep.witness.size(); ++i) out << (i ? " - " : " ") << rep.witness[i];
        out << '\n';
    }
    if (rep.status == ValidationReport::Status::valid) out << "minimal: " << (rep.minimal ? "yes" : "no") << '\n';
    if (rep.cost) out << "cost: " << *rep.cost << '\n';
    return 0;
}

struct OracleOptions {
    std::string file;
    std::optional<std::uint64_t> seed;
    RandomSpec spec;
    std::size_t max_vertices = kDefaultSeparatorCap;
};

inline int cmd_oracle(const OracleOptions& opt, bool as_json, std::ostream& out, std::ostream& err) {
    std::optional<CausalProblem> problem;
    if (opt.seed) {
        problem.emplace(random_instance(*opt.seed, opt.spec).problem);
    } else {
        problem.emplace(load(opt.file, err).problem);
    }
    EfficiencyGraph e = build_h1(*problem);
    SeparatorCatalog cat = enumerate_separators(e, opt.max_vertices);
    AdjustmentResult r = optimal_min_cost(e);
    bool agrees = r.exists ? std::find(cat.minimum_cost.begin(), cat.minimum_cost.end(), r.optimal_set) !=
                                 cat.minimum_cost.end()
                           : cat.all_separators.empty();

    if (as_json) {
        json j;
        if (opt.seed) j["instance"] = serialize_problem(*problem);
        j["candidates"] = e.candidate_costs.size();
        j["separators"] = cat.all_separators.size();
        auto lists = [](const std::vector<VertexSet>& v) {
            json a = json::array();
            for (const auto& s : v) a.push_back(set_json(s));
            return a;
        };
        j["minimal"] = lists(cat.minimal);
        j["minimum_cost"] = lists(cat.minimum_cost);
        j["min_cost_value"] = cat.min_cost_value ? cost_json(*cat.min_cost_value) : json(nullptr);
        j["minimum_cardinality"] = lists(cat.minimum_cardinality);
        j["optimal_set"] = r.exists ? set_json(r.optimal_set) : json(nullptr);
        j["agrees"] = agrees;
        out << j.dump(2) << '\n';
        return 0;
    }
    if (opt.seed) out << "# instance (seed " << *opt.seed << ")\n" << serialize_problem(*problem) << '\n';
    auto print = [&](const char* title, const std::vector<VertexSet>& v) {
        out << title << " (" << v.size() << "):";
        for (const auto& s : v) out << ' ' << braces(s);
        out << '\n';
    };
    out << "candidates: " << e.candidate_costs.size() << '\n';
    out << "separators: " << cat.all_separators.size() << '\n';
    print("minimal", cat.minimal);
    print("minimum cost", cat.minimum_cost);
    if (cat.min_cost_value) out << "minimum cost value: " << *cat.min_cost_value << '\n';
    print("minimum cardinality", cat.minimum_cardinality);
    out << "flow result: " << (r.exists ? braces(r.optimal_set) : std::string("none")) << " ("
        << (agrees ? "agrees with oracle" : "DISAGREES with oracle") << ")\n";
    return 0;
}

inline int cmd_dump_h1(const std::string& file, bool as_json, std::ostream& out, std::ostream& err) {
    EfficiencyGraph e = build_h1(load(file, err).problem);
    if (as_json) {
        json j;
        j["treatment"] = e.treatment;
        j["outcome"] = e.outcome;
        j["ignore"] = set_json(e.ignore);
        json vs = json::array();
        for (const auto& v : e.h1.vertices()) {
            json item{{"name", v}};
            if (auto it = e.candidate_costs.find(v); it != e.candidate_costs.end()) item["cost"] = cost_json(it->second);
            vs.push_back(item);
        }
        j["vertices"] = vs;
        json es = json::array();
        for (const auto& [u, w] : e.h1.edges()) es.push_back({u, w});
        j["edges"] = es;
        out << j.dump(2) << '\n';
        return 0;
    }
    out << "treatment: " << e.treatment << "\noutcome: " << e.outcome << '\n';
    out << "ignore: " << braces(e.ignore) << '\n';
    out << "vertices:";
    for (const auto& v : e.h1.vertices()) {
        out << ' ' << v;
        if (auto it = e.candidate_costs.find(v); it != e.candidate_costs.end()) out << '(' << it->second << ')';
    }
    out << "\nedges (" << e.h1.edge_count() << "):\n";
    for (const auto& [u, w] : e.h1.edges()) out << "  " << u << " -- " << w << '\n';
    return 0;
}

inline int cmd_dump_network(const std::string& file, bool as_json, std::ostream& out, std::ostream& err) {
    FlowNetwork n = build_network(build_h1(load(file, err).problem));
    if (!as_json) {
        out << to_dot(n);
        return 0;
    }
    json j;
    j["source"] = n.node_label(n.source());
    j["sink"] = n.node_label(n.sink());
    j["big_m"] = n.big_m();
    j["scale"] = n.scale();
    json arcs = json::array();
    for (const auto& a : n.arcs()) {
        json item{{"from", n.node_label(a.from)}, {"to", n.node_label(a.to)}};
        item["capacity"] = a.capacity.is_infinite() ? json("inf") : json(a.capacity.value());
        arcs.push_back(item);
    }
    j["arcs"] = arcs;
    out << j.dump(2) << '\n';
    return 0;
}

}  // namespace cli_detail

/// Runs one CLI invocation. `args` excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    using namespace cli_detail;
    CLI::App app{"Optimal minimum cost adjustment sets in causal DAGs", "optadj"};
    app.require_subcommand(1);

    std::string file;
    std::string set_text;
    bool as_json = false;
    OracleOptions oracle;
    std::uint64_t seed = 0;

    auto with_file = [&](CLI::App* sub) {
        sub->add_option("file", file, "problem document ('-' for stdin)")->required();
        sub->add_flag("--json", as_json, "machine-readable output");
        return sub;
    };
    auto* optimal = with_file(app.add_subcommand("optimal", "optimal minimum cost adjustment set"));
    auto* min_card = with_file(app.add_subcommand("min-card", "optimal minimum cardinality adjustment set"));
    auto* validate = with_file(app.add_subcommand("validate", "check a candidate adjustment set"));
    validate->add_option("--set", set_text, "comma-separated vertices, e.g. X,T,R")->required();
    auto* dump_h1 = with_file(app.add_subcommand("dump-h1", "print the adjustment efficiency graph"));
    auto* dump_network = with_file(app.add_subcommand("dump-network", "print the flow network (Graphviz DOT)"));

    auto* orc = app.add_subcommand("oracle", "exhaustive separator enumeration (small instances only)");
    auto* orc_file = orc->add_option("file", oracle.file, "problem document");
    auto* orc_seed = orc->add_option("--seed", seed, "generate a random instance instead of reading a file");
    orc->add_option("--vertices", oracle.spec.n_vertices, "random instance size")->needs(orc_seed);
    orc->add_option("--edge-prob", oracle.spec.edge_prob, "random edge probability")->needs(orc_seed);
    orc->add_option("--hidden-frac", oracle.spec.hidden_frac, "share of latent vertices")->needs(orc_seed);
    orc->add_option("--max-vertices", oracle.max_vertices, "enumeration cap on H1 candidates");
    orc->add_flag("--json", as_json, "machine-readable output");
    orc_seed->excludes(orc_file);
    orc_file->excludes(orc_seed);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (optimal->parsed()) return cmd_optimal(file, false, as_json, out, err);
        if (min_card->parsed()) return cmd_optimal(file, true, as_json, out, err);
        if (validate->parsed()) return cmd_validate(file, set_text, as_json, out, err);
        if (dump_h1->parsed()) return cmd_dump_h1(file, as_json, out, err);
        if (dump_network->parsed()) return cmd_dump_network(file, as_json, out, err);
        if (orc->parsed()) {
            if (orc_seed->count() > 0) oracle.seed = seed;
            if (!oracle.seed && oracle.file.empty()) {
                err << "error: oracle needs a file or --seed\n";
                return 1;
            }
            return cmd_oracle(oracle, as_json, out, err);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

}  // namespace optadj
