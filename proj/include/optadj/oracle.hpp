#pragma once

// Brute-force references for differential testing. Desk scale only: every
// entry point refuses instances above a hard cap.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "optadj/adjustment.hpp"
#include "optadj/flow.hpp"

namespace optadj {

struct SeparatorCatalog {
    std::vector<VertexSet> all_separators;
    std::vector<VertexSet> minimal;
    std::vector<VertexSet> minimum_cost;
    std::vector<VertexSet> minimum_cardinality;
    /// Empty when A and Y cannot be separated.
    std::optional<Rational> min_cost_value;
};

inline constexpr std::size_t kDefaultSeparatorCap = 20;
inline constexpr std::size_t kDefaultCutCap = 24;

/// Checks every subset of the candidates that contains L.
inline SeparatorCatalog enumerate_separators(const EfficiencyGraph& e,
                                             std::size_t max_vertices = kDefaultSeparatorCap) {
    VertexSet candidates = e.candidates();
    if (candidates.size() > max_vertices)
        throw OracleLimitError("separator oracle limited to " + std::to_string(max_vertices) + " candidates, got " +
                               std::to_string(candidates.size()));
    std::vector<VertexId> free;
    for (const auto& v : candidates)
        if (!e.policy.count(v)) free.push_back(v);

    SeparatorCatalog cat;
    const std::uint64_t subsets = std::uint64_t{1} << free.size();
    for (std::uint64_t mask = 0; mask < subsets; ++mask) {
        VertexSet z = e.policy;
        for (std::size_t i = 0; i < free.size(); ++i)
            if (mask >> i & 1) z.insert(free[i]);
        if (is_separator(e.h1, e.treatment, e.outcome, z)) cat.all_separators.push_back(std::move(z));
    }
    std::sort(cat.all_separators.begin(), cat.all_separators.end());

    std::size_t min_card = std::numeric_limits<std::size_t>::max();
    for (const auto& z : cat.all_separators) {
        if (is_minimal_separator(e.h1, e.treatment, e.outcome, z)) cat.minimal.push_back(z);
        Rational c = e.cost_of(z);
        if (!cat.min_cost_value || c < *cat.min_cost_value) cat.min_cost_value = c;
        min_card = std::min(min_card, z.size());
    }
    for (const auto& z : cat.all_separators) {
        if (e.cost_of(z) == *cat.min_cost_value) cat.minimum_cost.push_back(z);
        if (z.size() == min_card) cat.minimum_cardinality.push_back(z);
    }
    return cat;
}

/// Every cut of minimum (finite) capacity, found by depth-first assignment of
/// nodes to the source side with pruning once the decided arcs already
/// exceed the best capacity seen.  Empty when every cut is infinite.
inline std::vector<Cut> enumerate_min_cuts(const FlowNetwork& n, std::size_t max_nodes = kDefaultCutCap) {
    if (n.node_count() > max_nodes)
        throw OracleLimitError("min-cut oracle limited to " + std::to_string(max_nodes) + " nodes, got " +
                               std::to_string(n.node_count()));
    enum : signed char { undecided = -1, outside = 0, inside = 1 };
    std::vector<signed char> side(n.node_count(), undecided);
    side[n.source()] = inside;
    side[n.sink()] = outside;
    std::vector<NodeId> order;
    for (NodeId v = 0; v < n.node_count(); ++v)
        if (side[v] == undecided) order.push_back(v);

    constexpr std::int64_t kInfinite = std::numeric_limits<std::int64_t>::max();
    std::int64_t best = kInfinite;
    std::vector<Cut> found;

    // Capacity contributed by arcs between v and already decided nodes.
    auto contribution = [&](NodeId v) -> std::int64_t {
        std::int64_t add = 0;
        auto account = [&](std::size_t a) {
            const FlowArc& arc = n.arcs()[a];
            if (side[arc.from] != inside || side[arc.to] != outside) return true;
            if (arc.capacity.is_infinite()) return false;
            add += arc.capacity.value();
            return true;
        };
        for (std::size_t a : n.out_arcs(v))
            if (!account(a)) return kInfinite;
        for (std::size_t a : n.in_arcs(v))
            if (!account(a)) return kInfinite;
        return add;
    };

    std::int64_t base = 0;
    for (std::size_t a : n.out_arcs(n.source())) {
        const FlowArc& arc = n.arcs()[a];
        if (arc.to != n.sink()) continue;
        if (arc.capacity.is_infinite()) return {};
        base += arc.capacity.value();
    }

    auto search = [&](auto&& self, std::size_t depth, std::int64_t cost) -> void {
        if (cost > best) return;
        if (depth == order.size()) {
            if (cost < best) {
                best = cost;
                found.clear();
            }
            Cut c;
            for (NodeId v = 0; v < n.node_count(); ++v)
                if (side[v] == inside) c.members.insert(v);
            found.push_back(std::move(c));
            return;
        }
        NodeId v = order[depth];
        for (signed char choice : {inside, outside}) {
            side[v] = choice;
            std::int64_t add = contribution(v);
            if (add != kInfinite) self(self, depth + 1, cost + add);
        }
        side[v] = undecided;
    };
    search(search, 0, base);
    std::sort(found.begin(), found.end(), [](const Cut& a, const Cut& b) { return a.members < b.members; });
    return found;
}

struct RandomInstance {
    CausalProblem problem;
    std::uint64_t seed;
    /// Number of draws needed to obtain a valid instance.
    int attempts;
};

struct RandomSpec {
    std::size_t n_vertices = 8;
    double edge_prob = 0.4;
    double hidden_frac = 0.0;
    int cost_lo = 1;
    int cost_hi = 5;
    /// Chance that an eligible non-descendant of A joins L.
    double policy_prob = 0.2;
};

/// Deterministic-by-seed random problem over the fixed order V00, V01, ...
/// Edges only go forward in that order, so the graph is acyclic by
/// construction.  Draws lacking a treatment with a proper descendant are
/// resampled.
inline RandomInstance random_instance(std::uint64_t seed, const RandomSpec& spec, int max_attempts = 100) {
    if (spec.n_vertices < 3) throw Error("random_instance needs at least 3 vertices");
    if (spec.edge_prob < 0 || spec.edge_prob > 1 || spec.hidden_frac < 0 || spec.hidden_frac > 1 ||
        spec.policy_prob < 0 || spec.policy_prob > 1)
        throw Error("random_instance fractions must lie in [0, 1]");
    if (spec.cost_lo <= 0 || spec.cost_hi < spec.cost_lo) throw Error("random_instance cost range must be positive");

    std::mt19937_64 rng(seed);
    std::bernoulli_distribution edge(spec.edge_prob);
    std::bernoulli_distribution joins_policy(spec.policy_prob);
    std::uniform_int_distribution<int> cost(spec.cost_lo, spec.cost_hi);

    const int width = spec.n_vertices > 100 ? 3 : 2;
    auto name = [&](std::size_t i) {
        std::string s = std::to_string(i);
        return "V" + std::string(width > static_cast<int>(s.size()) ? width - s.size() : 0, '0') + s;
    };

    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        DirectedGraph g;
        for (std::size_t i = 0; i < spec.n_vertices; ++i) g.add_vertex(name(i));
        for (std::size_t i = 0; i < spec.n_vertices; ++i)
            for (std::size_t j = i + 1; j < spec.n_vertices; ++j)
                if (edge(rng)) g.add_edge(name(i), name(j));

        std::vector<VertexId> treatments;
        for (const auto& v : g.vertices())
            if (!g.children(v).empty()) treatments.push_back(v);
        if (treatments.empty()) continue;
        VertexId a = treatments[std::uniform_int_distribution<std::size_t>(0, treatments.size() - 1)(rng)];
        VertexSet de_a = descendants(g, {a});
        de_a.erase(a);
        std::vector<VertexId> outcomes(de_a.begin(), de_a.end());
        VertexId y = outcomes[std::uniform_int_distribution<std::size_t>(0, outcomes.size() - 1)(rng)];

        std::vector<VertexId> others;
        for (const auto& v : g.vertices())
            if (v != a && v != y) others.push_back(v);
        std::shuffle(others.begin(), others.end(), rng);
        auto hidden = static_cast<std::size_t>(std::lround(spec.hidden_frac * static_cast<double>(others.size())));
        VertexSet observed = g.vertices();
        for (std::size_t i = 0; i < hidden; ++i) observed.erase(others[i]);

        VertexSet policy;
        VertexSet de_full = descendants(g, {a});
        for (const auto& v : observed)
            if (!de_full.count(v) && joins_policy(rng)) policy.insert(v);

        CostMap costs;
        for (const auto& v : observed)
            if (v != a && v != y) costs.emplace(v, Rational(cost(rng)));

        return RandomInstance{CausalProblem(std::move(g), a, y, std::move(policy), std::move(observed), std::move(costs)),
                              seed, attempt};
    }
    throw Error("random_instance: retry budget exhausted for seed " + std::to_string(seed));
}

}  // namespace optadj
