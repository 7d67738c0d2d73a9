#pragma once

// Line-oriented problem documents.
//
//   # comment
//   edge U W            directed U -> W
//   treatment A
//   outcome Y
//   policy X1 X2 ...    optional, may repeat
//   latent U1 U2 ...    optional, may repeat
//   vertex W1 W2 ...    optional, declares isolated vertices
//   cost W 2.5          decimal, at most 6 fractional digits
//
// Vertices are declared by any mention outside a cost line.  Adjustment
// candidates without a cost default to 1 with a warning.

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "optadj/adjustment.hpp"

namespace optadj {

struct ParsedProblem {
    CausalProblem problem;
    std::vector<std::string> warnings;
};

namespace detail {

inline std::vector<std::string> tokenize(std::string_view line) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
        if (j > i) out.emplace_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

}  // namespace detail

inline ParsedProblem parse_problem(std::string_view text) {
    DirectedGraph g;
    std::optional<VertexId> treatment;
    std::optional<VertexId> outcome;
    VertexSet policy;
    VertexSet latent;
    struct CostLine {
        std::size_t line;
        Rational value;
    };
    std::map<VertexId, CostLine> explicit_costs;

    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

        auto tok = detail::tokenize(line);
        if (tok.empty()) continue;
        const std::string& kw = tok[0];
        auto expect_args = [&](std::size_t n) {
            if (tok.size() - 1 != n)
                throw ParseError(lineno, "'" + kw + "' expects " + std::to_string(n) + " argument(s), got " +
                                             std::to_string(tok.size() - 1));
        };
        auto expect_some = [&] {
            if (tok.size() < 2) throw ParseError(lineno, "'" + kw + "' expects at least one vertex");
        };

        if (kw == "edge") {
            expect_args(2);
            if (tok[1] == tok[2]) throw ParseError(lineno, "self-loop on '" + tok[1] + "'");
            g.add_edge(tok[1], tok[2]);
        } else if (kw == "treatment" || kw == "outcome") {
            expect_args(1);
            auto& slot = kw == "treatment" ? treatment : outcome;
            if (slot) throw ParseError(lineno, "duplicate '" + kw + "' directive");
            slot = tok[1];
            g.add_vertex(tok[1]);
        } else if (kw == "policy" || kw == "latent" || kw == "vertex") {
            expect_some();
            for (std::size_t i = 1; i < tok.size(); ++i) {
                g.add_vertex(tok[i]);
                if (kw == "policy") policy.insert(tok[i]);
                if (kw == "latent") latent.insert(tok[i]);
            }
        } else if (kw == "cost") {
            expect_args(2);
            Rational value;
            try {
                value = parse_decimal(tok[2]);
            } catch (const Error& e) {
                throw ParseError(lineno, std::string(e.what()) + " (costs must be positive decimals)");
            }
            if (value <= Rational(0)) throw ParseError(lineno, "cost of '" + tok[1] + "' must be positive");
            if (!explicit_costs.emplace(tok[1], CostLine{lineno, value}).second)
                throw ParseError(lineno, "duplicate cost for '" + tok[1] + "'");
        } else {
            throw ParseError(lineno, "unknown directive '" + kw + "'");
        }
    }

    if (!treatment) throw ParseError("missing 'treatment' directive");
    if (!outcome) throw ParseError("missing 'outcome' directive");
    for (const auto& [v, c] : explicit_costs)
        if (!g.contains(v)) throw ParseError(c.line, "cost for undeclared vertex '" + v + "'");
    if (!is_acyclic(g)) throw ParseError("graph contains a directed cycle");

    std::vector<std::string> warnings;
    VertexSet observed = set_difference(g.vertices(), latent);
    CostMap costs;
    VertexSet defaulted;
    for (const auto& [v, c] : explicit_costs) {
        if (latent.count(v))
            warnings.push_back("cost for latent vertex '" + v + "' ignored");
        else
            costs.emplace(v, c.value);
    }
    VertexSet cand = detail::candidates(g, *treatment, *outcome, policy, observed);
    for (const auto& v : cand) {
        if (costs.count(v)) continue;
        costs.emplace(v, Rational(1));
        defaulted.insert(v);
    }

    CausalProblem problem(std::move(g), *treatment, *outcome, std::move(policy), std::move(observed), std::move(costs));

    VertexSet ignore = ignore_set(problem);
    for (const auto& v : defaulted) warnings.push_back("no cost for '" + v + "', defaulting to 1");
    for (const auto& [v, _] : explicit_costs) {
        if (v == problem.treatment() || v == problem.outcome())
            warnings.push_back("cost for '" + v + "' ignored: treatment and outcome carry no cost");
        else if (ignore.count(v) && !latent.count(v))
            warnings.push_back("cost for '" + v + "' ignored: vertex can never be adjusted for");
    }
    return ParsedProblem{std::move(problem), std::move(warnings)};
}

/// Canonical document: roles first, then sorted edges, then sorted costs.
/// Costs must be decimals with at most 6 fractional digits.
inline std::string serialize_problem(const CausalProblem& p) {
    std::ostringstream os;
    auto list = [&](const char* kw, const VertexSet& s) {
        if (s.empty()) return;
        os << kw;
        for (const auto& v : s) os << ' ' << v;
        os << '\n';
    };
    os << "treatment " << p.treatment() << '\n';
    os << "outcome " << p.outcome() << '\n';
    list("policy", p.policy());
    list("latent", p.latent());
    VertexSet isolated;
    for (const auto& v : p.graph().vertices())
        if (p.graph().children(v).empty() && p.graph().parents(v).empty() && v != p.treatment() &&
            v != p.outcome() && !p.policy().count(v) && p.observed().count(v))
            isolated.insert(v);
    list("vertex", isolated);
    for (const auto& [u, w] : p.graph().edges()) os << "edge " << u << ' ' << w << '\n';
    for (const auto& [v, c] : p.costs()) {
        std::string text = c.to_string();
        if (text.find('/') != std::string::npos)
            throw Error("cost of '" + v + "' is not a terminating decimal and cannot be serialized");
        os << "cost " << v << ' ' << text << '\n';
    }
    return os.str();
}

}  // namespace optadj
