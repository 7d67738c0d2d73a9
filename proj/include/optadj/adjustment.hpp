#pragma once

// Causal problem instances and the undirected adjustment efficiency graph.
//
// Pipeline: G -> proper back-door graph -> restrict to an({A,Y} u L) ->
// moralize -> project out Ignore -> wire L to A and Y.  Minimum cost
// adjustment sets are exactly the minimum cost A-Y separators of the result.

#include <map>
#include <string>
#include <utility>

#include "optadj/graph.hpp"
#include "optadj/rational.hpp"

namespace optadj {

using CostMap = std::map<VertexId, Rational>;

namespace detail {

// cn(A,Y,G): vertices on a directed A -> Y path, A itself excluded.
inline VertexSet causal_nodes(const DirectedGraph& g, const VertexId& a, const VertexId& y) {
    VertexSet on_path = set_intersection(descendants(g, {a}), ancestors(g, {y}));
    on_path.erase(a);
    return on_path;
}

inline VertexSet forbidden(const DirectedGraph& g, const VertexId& a, const VertexId& y) {
    VertexSet out = descendants(g, causal_nodes(g, a, y));
    out.insert(a);
    return out;
}

inline VertexSet ignore_set(const DirectedGraph& g, const VertexId& a, const VertexId& y, const VertexSet& policy,
                            const VertexSet& observed) {
    VertexSet relevant = ancestors(g, set_union({a, y}, policy));
    relevant.erase(a);
    relevant.erase(y);
    VertexSet excluded = set_union(set_difference(g.vertices(), observed), forbidden(g, a, y));
    return set_intersection(relevant, excluded);
}

inline VertexSet candidates(const DirectedGraph& g, const VertexId& a, const VertexId& y, const VertexSet& policy,
                            const VertexSet& observed) {
    VertexSet relevant = ancestors(g, set_union({a, y}, policy));
    relevant.erase(a);
    relevant.erase(y);
    return set_difference(relevant, ignore_set(g, a, y, policy, observed));
}

}  // namespace detail

/// A DAG with treatment A, outcome Y, policy variables L, observable set N
/// and positive costs. Construction validates every invariant and throws
/// ProblemError on the first violation.
///
/// Costs must cover every observable vertex that can appear in an adjustment
/// set (the H1 candidates). Costs for other observable vertices are kept but
/// play no role. Costs on latent vertices are rejected.
class CausalProblem {
public:
    CausalProblem(DirectedGraph graph, VertexId treatment, VertexId outcome, VertexSet policy, VertexSet observed,
                  CostMap costs)
        : graph_(std::move(graph)),
          treatment_(std::move(treatment)),
          outcome_(std::move(outcome)),
          policy_(std::move(policy)),
          observed_(std::move(observed)),
          costs_(std::move(costs)) {
        validate();
    }

    const DirectedGraph& graph() const noexcept { return graph_; }
    const VertexId& treatment() const noexcept { return treatment_; }
    const VertexId& outcome() const noexcept { return outcome_; }
    const VertexSet& policy() const noexcept { return policy_; }
    const VertexSet& observed() const noexcept { return observed_; }
    const CostMap& costs() const noexcept { return costs_; }
    VertexSet latent() const { return set_difference(graph_.vertices(), observed_); }

private:
    void validate() const {
        auto fail = [](const std::string& msg) { throw ProblemError(msg); };
        if (!is_acyclic(graph_)) fail("graph contains a directed cycle");
        if (!graph_.contains(treatment_)) fail("treatment '" + treatment_ + "' is not a vertex of the graph");
        if (!graph_.contains(outcome_)) fail("outcome '" + outcome_ + "' is not a vertex of the graph");
        if (treatment_ == outcome_) fail("treatment and outcome must differ");
        for (const auto& v : policy_)
            if (!graph_.contains(v)) fail("policy variable '" + v + "' is not a vertex of the graph");
        for (const auto& v : observed_)
            if (!graph_.contains(v)) fail("observed variable '" + v + "' is not a vertex of the graph");

        VertexSet de_a = descendants(graph_, {treatment_});
        if (!de_a.count(outcome_)) fail("outcome '" + outcome_ + "' is not a descendant of treatment '" + treatment_ + "'");
        for (const auto& v : set_union({treatment_, outcome_}, policy_))
            if (!observed_.count(v)) fail("'" + v + "' must be observed (treatment, outcome and policy variables)");
        for (const auto& v : policy_)
            if (de_a.count(v)) fail("policy variable '" + v + "' is a descendant of the treatment");

        for (const auto& [v, c] : costs_) {
            if (!graph_.contains(v)) fail("cost given for unknown vertex '" + v + "'");
            if (!observed_.count(v)) fail("cost given for latent vertex '" + v + "'");
            if (c <= Rational(0)) fail("cost of '" + v + "' must be positive, got " + c.to_string());
        }
        for (const auto& v : detail::candidates(graph_, treatment_, outcome_, policy_, observed_))
            if (!costs_.count(v)) fail("missing cost for candidate vertex '" + v + "'");
    }

    DirectedGraph graph_;
    VertexId treatment_;
    VertexId outcome_;
    VertexSet policy_;
    VertexSet observed_;
    CostMap costs_;
};

inline bool operator==(const CausalProblem& a, const CausalProblem& b) {
    return a.graph() == b.graph() && a.treatment() == b.treatment() && a.outcome() == b.outcome() &&
           a.policy() == b.policy() && a.observed() == b.observed() && a.costs() == b.costs();
}

/// H1 together with the data needed downstream.
struct EfficiencyGraph {
    UndirectedGraph h1;
    VertexId treatment;
    VertexId outcome;
    VertexSet policy;
    VertexSet ignore;
    /// Exactly vertices(h1) \ {A, Y}.
    CostMap candidate_costs;

    VertexSet candidates() const {
        VertexSet out;
        for (const auto& [v, _] : candidate_costs) out.insert(out.end(), v);
        return out;
    }

    /// Sum of candidate costs; throws GraphError for a non-candidate.
    Rational cost_of(const VertexSet& z) const {
        Rational total;
        for (const auto& v : z) {
            auto it = candidate_costs.find(v);
            if (it == candidate_costs.end()) throw GraphError("'" + v + "' is not a candidate vertex of H1");
            total += it->second;
        }
        return total;
    }
};

inline VertexSet causal_nodes(const CausalProblem& p) {
    return detail::causal_nodes(p.graph(), p.treatment(), p.outcome());
}

inline VertexSet forbidden(const CausalProblem& p) { return detail::forbidden(p.graph(), p.treatment(), p.outcome()); }

/// Removes the first edge A -> C of every directed A -> Y path, i.e. every
/// edge from A into a causal node.
inline DirectedGraph proper_backdoor(const CausalProblem& p) {
    DirectedGraph out = p.graph();
    for (const auto& c : causal_nodes(p))
        if (out.has_edge(p.treatment(), c)) out.remove_edge(p.treatment(), c);
    return out;
}

inline UndirectedGraph moralize(const DirectedGraph& g) {
    UndirectedGraph out;
    for (const auto& v : g.vertices()) out.add_vertex(v);
    for (const auto& [u, w] : g.edges()) out.add_edge(u, w);
    for (const auto& c : g.vertices()) {
        const auto& pa = g.parents(c);
        for (auto i = pa.begin(); i != pa.end(); ++i)
            for (auto j = std::next(i); j != pa.end(); ++j) out.add_edge(*i, *j);
    }
    return out;
}

inline VertexSet ignore_set(const CausalProblem& p) {
    return detail::ignore_set(p.graph(), p.treatment(), p.outcome(), p.policy(), p.observed());
}

/// Latent projection: removes `drop` and joins every pair of remaining
/// vertices linked through a path whose interior lies in `drop`.
///
/// Two survivors are so linked iff they both touch the same connected
/// component of h[drop], so each component contributes a clique on its
/// boundary.
inline UndirectedGraph project_out(const UndirectedGraph& h, const VertexSet& drop) {
    h.require(drop);
    UndirectedGraph out;
    for (const auto& v : h.vertices())
        if (!drop.count(v)) out.add_vertex(v);
    for (const auto& [u, w] : h.edges())
        if (!drop.count(u) && !drop.count(w)) out.add_edge(u, w);

    VertexSet visited;
    for (const auto& root : drop) {
        if (visited.count(root)) continue;
        VertexSet boundary;
        std::vector<VertexId> stack{root};
        visited.insert(root);
        while (!stack.empty()) {
            VertexId v = std::move(stack.back());
            stack.pop_back();
            for (const auto& w : h.neighbors(v)) {
                if (!drop.count(w))
                    boundary.insert(w);
                else if (visited.insert(w).second)
                    stack.push_back(w);
            }
        }
        for (auto i = boundary.begin(); i != boundary.end(); ++i)
            for (auto j = std::next(i); j != boundary.end(); ++j) out.add_edge(*i, *j);
    }
    return out;
}

inline EfficiencyGraph build_h1(const CausalProblem& p) {
    const VertexId& a = p.treatment();
    const VertexId& y = p.outcome();
    VertexSet relevant = ancestors(p.graph(), set_union({a, y}, p.policy()));
    UndirectedGraph h0 = moralize(induced_subgraph(proper_backdoor(p), relevant));

    EfficiencyGraph e;
    e.treatment = a;
    e.outcome = y;
    e.policy = p.policy();
    e.ignore = ignore_set(p);
    e.h1 = project_out(h0, e.ignore);
    for (const auto& l : p.policy()) {
        e.h1.add_edge(a, l);
        e.h1.add_edge(y, l);
    }
    for (const auto& v : e.h1.vertices())
        if (v != a && v != y) e.candidate_costs.emplace(v, p.costs().at(v));
    return e;
}

/// Same graph with every candidate cost replaced by 1.
inline EfficiencyGraph with_unit_costs(EfficiencyGraph e) {
    for (auto& [_, c] : e.candidate_costs) c = Rational(1);
    return e;
}

/// Graphical efficiency order between two separators of H1:
///   Y _||_ z2 \ z1 | z1   and   A _||_ z1 \ z2 | z2.
/// Throws GraphError if either argument is not an A-Y separator.
inline bool dominates(const EfficiencyGraph& e, const VertexSet& z1, const VertexSet& z2) {
    const VertexId& a = e.treatment;
    const VertexId& y = e.outcome;
    if (!is_separator(e.h1, a, y, z1)) throw GraphError("first argument is not an A-Y separator in H1");
    if (!is_separator(e.h1, a, y, z2)) throw GraphError("second argument is not an A-Y separator in H1");
    return separated(e.h1, {y}, set_difference(z2, z1), z1) && separated(e.h1, {a}, set_difference(z1, z2), z2);
}

}  // namespace optadj
