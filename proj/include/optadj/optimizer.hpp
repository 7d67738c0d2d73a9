#pragma once

// Optimal minimum cost adjustment set via max-flow on the node-split network.
//
//   H1 -> network -> max-flow f* -> S_c (residual reachable from Y'')
//      -> O_c = { W : W' in S_c, W'' not in S_c }
//
// S_c is the unique inclusion-minimal min-cut, so O_c does not depend on the
// solver or on which maximum flow it returned.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "optadj/adjustment.hpp"
#include "optadj/flow.hpp"

namespace optadj {

struct AdjustmentResult {
    VertexSet optimal_set;
    Rational total_cost;
    Cut min_cut;
    std::size_t h1_vertices = 0;
    std::size_t h1_edges = 0;
    /// In scaled integer units (see FlowNetwork::scale()).
    std::int64_t flow_value = 0;
    std::int64_t big_m = 0;
    std::int64_t scale = 1;
    /// False when no adjustment set exists; optimal_set is then empty.
    bool exists = false;
};

/// Vertices whose internal arc leaves the cut.
inline VertexSet map_h(const FlowNetwork& n, const Cut& s) {
    if (cut_capacity(n, s).is_infinite()) throw FlowError("no finite cut: no valid adjustment set exists");
    VertexSet out;
    for (const auto& v : n.vertices())
        if (s.contains(n.prime(v)) && !s.contains(n.double_prime(v))) out.insert(v);
    return out;
}

/// The cut induced by a minimal separator z: Y'' plus every node on a
/// directed path from Y'' to some W' (W in z) that avoids U', U'' for all
/// other U in z.  Throws GraphError unless z is a minimal A-Y separator.
inline Cut map_d(const EfficiencyGraph& e, const FlowNetwork& n, const VertexSet& z) {
    if (!is_minimal_separator(e.h1, e.treatment, e.outcome, z))
        throw GraphError("map_d is only defined for minimal A-Y separators");

    const std::size_t nodes = n.node_count();
    Cut cut;
    cut.members.insert(n.source());
    if (z.empty()) {
        // A and Y already disconnected: Definition 5 would give {Y''}, which
        // has infinite crossings whenever Y has neighbours. Use the
        // zero-capacity cut of everything reachable from Y'' instead.
        std::vector<NodeId> stack{n.source()};
        while (!stack.empty()) {
            NodeId u = stack.back();
            stack.pop_back();
            for (std::size_t a : n.out_arcs(u))
                if (cut.members.insert(n.arcs()[a].to).second) stack.push_back(n.arcs()[a].to);
        }
        return cut;
    }
    for (const auto& target : z) {
        // Paths to target' may not pass through any other separator node, nor
        // through target'' (a simple path ends at target' the first time).
        std::vector<bool> blocked(nodes, false);
        for (const auto& u : z) {
            blocked[n.double_prime(u)] = true;
            if (u != target) blocked[n.prime(u)] = true;
        }
        std::vector<bool> forward(nodes, false);
        std::vector<NodeId> stack{n.source()};
        forward[n.source()] = true;
        while (!stack.empty()) {
            NodeId u = stack.back();
            stack.pop_back();
            if (u == n.prime(target)) continue;
            for (std::size_t a : n.out_arcs(u)) {
                NodeId v = n.arcs()[a].to;
                if (!blocked[v] && !forward[v]) {
                    forward[v] = true;
                    stack.push_back(v);
                }
            }
        }
        if (!forward[n.prime(target)]) continue;
        std::vector<bool> backward(nodes, false);
        stack.assign(1, n.prime(target));
        backward[n.prime(target)] = true;
        while (!stack.empty()) {
            NodeId v = stack.back();
            stack.pop_back();
            for (std::size_t a : n.in_arcs(v)) {
                NodeId u = n.arcs()[a].from;
                if (!blocked[u] && !backward[u] && u != n.prime(target)) {
                    backward[u] = true;
                    stack.push_back(u);
                }
            }
        }
        for (NodeId v = 0; v < nodes; ++v)
            if (forward[v] && backward[v]) cut.members.insert(v);
    }
    return cut;
}

inline Cut map_d(const EfficiencyGraph& e, const VertexSet& z) { return map_d(e, build_network(e), z); }

inline AdjustmentResult optimal_min_cost(const EfficiencyGraph& e, Solver solver = Solver::push_relabel) {
    FlowNetwork n = build_network(e);
    FlowState f = max_flow(n, solver);

    AdjustmentResult r;
    r.h1_vertices = e.h1.vertex_count();
    r.h1_edges = e.h1.edge_count();
    r.flow_value = f.value;
    r.big_m = n.big_m();
    r.scale = n.scale();
    r.min_cut = residual_reachable(n, f);
    r.exists = f.value < n.big_m();
    if (r.exists) {
        r.optimal_set = map_h(n, r.min_cut);
        r.total_cost = e.cost_of(r.optimal_set);
        if (r.total_cost != Rational(f.value, n.scale()))
            throw FlowError("internal inconsistency: cut cost differs from flow value");
    }
    return r;
}

inline AdjustmentResult optimal_min_cost(const CausalProblem& p, Solver solver = Solver::push_relabel) {
    return optimal_min_cost(build_h1(p), solver);
}

/// Unit costs: optimal among minimum cardinality adjustment sets.
inline AdjustmentResult optimal_min_cardinality(const CausalProblem& p, Solver solver = Solver::push_relabel) {
    return optimal_min_cost(with_unit_costs(build_h1(p)), solver);
}

struct ValidationReport {
    enum class Status { valid, invalid, not_checkable };

    Status status = Status::invalid;
    bool minimal = false;
    /// Present whenever every member has a known cost.
    std::optional<Rational> cost;
    std::string reason;
    /// For separation failures: an A ... Y path in H1 avoiding the set.
    std::vector<VertexId> witness;
};

inline const char* to_string(ValidationReport::Status s) {
    switch (s) {
        case ValidationReport::Status::valid:
            return "valid";
        case ValidationReport::Status::invalid:
            return "invalid";
        case ValidationReport::Status::not_checkable:
            return "not-checkable";
    }
    return "?";
}

/// Checks a candidate L-N adjustment set against H1.  Unknown labels throw;
/// every other outcome is reported.
inline ValidationReport validate_adjustment(const CausalProblem& p, const VertexSet& z) {
    p.graph().require(z);
    ValidationReport report;
    using Status = ValidationReport::Status;

    Rational total;
    bool priced = true;
    for (const auto& v : z) {
        auto it = p.costs().find(v);
        if (it == p.costs().end()) {
            priced = false;
            break;
        }
        total += it->second;
    }
    if (priced) report.cost = total;

    auto reject = [&](std::string why) {
        report.status = Status::invalid;
        report.reason = std::move(why);
        return report;
    };
    if (z.count(p.treatment()) || z.count(p.outcome())) return reject("set contains the treatment or the outcome");
    for (const auto& v : z)
        if (!p.observed().count(v)) return reject("'" + v + "' is latent");
    for (const auto& v : p.policy())
        if (!z.count(v)) return reject("policy variable '" + v + "' is missing");
    VertexSet forb = forbidden(p);
    for (const auto& v : z)
        if (forb.count(v)) return reject("'" + v + "' is a forbidden vertex");

    EfficiencyGraph e = build_h1(p);
    for (const auto& v : z) {
        if (!e.h1.contains(v)) {
            report.status = Status::not_checkable;
            report.reason = "'" + v + "' lies outside the H1 candidate universe";
            return report;
        }
    }
    if (auto path = find_path(e.h1, {p.treatment()}, {p.outcome()}, z)) {
        report.witness = std::move(*path);
        return reject("treatment and outcome remain connected in H1");
    }
    report.status = Status::valid;
    report.minimal = is_minimal_separator(e.h1, p.treatment(), p.outcome(), z);
    return report;
}

}  // namespace optadj
