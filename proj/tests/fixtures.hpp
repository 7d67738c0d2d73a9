#pragma once

#include <random>
#include <string>
#include <vector>

#include "optadj/optadj.hpp"

namespace fixtures {

using namespace optadj;

inline DirectedGraph digraph(std::initializer_list<std::pair<const char*, const char*>> edges) {
    DirectedGraph g;
    for (const auto& [u, w] : edges) g.add_edge(u, w);
    return g;
}

inline UndirectedGraph ugraph(std::initializer_list<std::pair<const char*, const char*>> edges) {
    UndirectedGraph h;
    for (const auto& [u, w] : edges) h.add_edge(u, w);
    return h;
}

inline DirectedGraph fig1_graph() {
    return digraph({{"X", "A"}, {"K", "A"}, {"B", "K"}, {"Q", "K"}, {"A", "M"}, {"B", "R"},
                    {"Q", "T"}, {"R", "Y"}, {"T", "Y"}, {"M", "Y"}, {"U", "Y"}, {"U", "F"}});
}

inline CausalProblem fig1(CostMap overrides = {}) {
    CostMap costs{{"X", 1}, {"K", 4}, {"B", 2}, {"Q", 1}, {"R", 1}, {"T", 1}, {"F", 1}};
    for (const auto& [v, c] : overrides) costs[v] = c;
    DirectedGraph g = fig1_graph();
    VertexSet observed = g.vertices();
    observed.erase("U");
    return CausalProblem(std::move(g), "A", "Y", {"X"}, std::move(observed), std::move(costs));
}

inline UndirectedGraph fig1_h1() {
    return ugraph({{"B", "R"}, {"B", "Q"}, {"B", "K"}, {"Q", "K"}, {"K", "A"}, {"K", "X"},
                   {"Q", "T"}, {"R", "Y"}, {"R", "T"}, {"T", "Y"}, {"X", "A"}, {"X", "Y"}});
}

inline DirectedGraph fig3_graph() {
    return digraph({{"B", "A"}, {"Q", "A"}, {"B", "T"}, {"Q", "R"}, {"T", "Y"}, {"R", "Y"}, {"A", "Y"}});
}

inline CausalProblem fig3() {
    DirectedGraph g = fig3_graph();
    VertexSet all = g.vertices();
    return CausalProblem(std::move(g), "A", "Y", {}, std::move(all), {{"B", 1}, {"Q", 1}, {"T", 2}, {"R", 2}});
}

inline UndirectedGraph fig3_h1() {
    return ugraph({{"B", "A"}, {"Q", "A"}, {"B", "Q"}, {"B", "T"}, {"Q", "R"}, {"T", "Y"}, {"T", "R"}, {"R", "Y"}});
}

/// Forward-ordered random DAG on V00..V(n-1).
inline DirectedGraph random_dag(std::mt19937_64& rng, std::size_t n, double p) {
    DirectedGraph g;
    std::bernoulli_distribution edge(p);
    for (std::size_t i = 0; i < n; ++i) g.add_vertex("V" + std::to_string(100 + i));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (edge(rng)) g.add_edge("V" + std::to_string(100 + i), "V" + std::to_string(100 + j));
    return g;
}

/// Random instances in the acceptance sweep regime.
inline std::vector<RandomInstance> sweep(std::size_t count, std::uint64_t first_seed = 1) {
    std::vector<RandomInstance> out;
    for (std::uint64_t seed = first_seed; out.size() < count; ++seed) {
        RandomSpec spec;
        spec.n_vertices = 8 + seed % 5;
        spec.edge_prob = 0.35;
        spec.hidden_frac = seed % 2 ? 0.2 : 0.0;
        out.push_back(random_instance(seed, spec));
    }
    return out;
}

inline std::string data_file(const std::string& name) { return std::string(OPTADJ_DATA_DIR) + "/" + name; }

}  // namespace fixtures
