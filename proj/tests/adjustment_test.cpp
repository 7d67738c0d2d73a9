#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace optadj;
using namespace fixtures;

TEST(CausalNodes, Figure1) { EXPECT_EQ(causal_nodes(fig1()), (VertexSet{"M", "Y"})); }

TEST(Forbidden, Figures) {
    EXPECT_EQ(forbidden(fig1()), (VertexSet{"A", "Y", "M"}));
    EXPECT_EQ(forbidden(fig3()), (VertexSet{"A", "Y"}));
}

TEST(ProperBackdoor, RemovesFirstCausalEdge) {
    DirectedGraph expected = fig1_graph();
    expected.remove_edge("A", "M");
    EXPECT_EQ(proper_backdoor(fig1()), expected);

    DirectedGraph expected3 = fig3_graph();
    expected3.remove_edge("A", "Y");
    EXPECT_EQ(proper_backdoor(fig3()), expected3);
}

TEST(Moralize, MarriesParents) {
    UndirectedGraph m = moralize(digraph({{"P", "C"}, {"Q", "C"}, {"C", "D"}}));
    EXPECT_TRUE(m.has_edge("P", "Q"));
    EXPECT_EQ(m.edge_count(), 4u);
}

TEST(IgnoreSet, Figures) {
    EXPECT_EQ(ignore_set(fig1()), (VertexSet{"U", "M"}));
    EXPECT_TRUE(ignore_set(fig3()).empty());
}

TEST(ProjectOut, ChainOfDropped) {
    UndirectedGraph h = ugraph({{"a", "x"}, {"x", "z"}, {"z", "b"}, {"c", "z"}});
    UndirectedGraph p = project_out(h, {"x", "z"});
    EXPECT_EQ(p, ugraph({{"a", "b"}, {"a", "c"}, {"b", "c"}}));
}

TEST(BuildH1, Figure1) {
    EfficiencyGraph e = build_h1(fig1());
    EXPECT_EQ(e.h1, fig1_h1());
    EXPECT_EQ(e.h1.edge_count(), 12u);
    EXPECT_EQ(e.ignore, (VertexSet{"U", "M"}));
    EXPECT_EQ(e.candidates(), (VertexSet{"B", "K", "Q", "R", "T", "X"}));
}

TEST(BuildH1, Figure3) { EXPECT_EQ(build_h1(fig3()).h1, fig3_h1()); }

TEST(BuildH1, DirectEffectOnly) {
    DirectedGraph g = digraph({{"A", "Y"}});
    CausalProblem p(g, "A", "Y", {}, g.vertices(), {});
    EfficiencyGraph e = build_h1(p);
    EXPECT_EQ(e.h1.edge_count(), 0u);
    EXPECT_TRUE(is_separator(e.h1, "A", "Y", {}));
}

TEST(BuildH1, PolicyWiredToEndpoints) {
    EfficiencyGraph e = build_h1(fig1());
    EXPECT_TRUE(e.h1.has_edge("X", "A"));
    EXPECT_TRUE(e.h1.has_edge("X", "Y"));
}

TEST(CausalProblem, Validation) {
    DirectedGraph g = fig1_graph();
    VertexSet all = g.vertices();
    CostMap ones;
    for (const auto& v : all) ones[v] = 1;
    EXPECT_THROW(CausalProblem(g, "A", "Z", {}, all, ones), ProblemError);
    EXPECT_THROW(CausalProblem(g, "Y", "A", {}, all, ones), ProblemError);
    EXPECT_THROW(CausalProblem(g, "A", "Y", {"M"}, all, ones), ProblemError);
    VertexSet hidden_x = all;
    hidden_x.erase("X");
    EXPECT_THROW(CausalProblem(g, "A", "Y", {"X"}, hidden_x, ones), ProblemError);
    CostMap zero = ones;
    zero["K"] = 0;
    EXPECT_THROW(CausalProblem(g, "A", "Y", {}, all, zero), ProblemError);
    CostMap missing = ones;
    missing.erase("K");
    EXPECT_THROW(CausalProblem(g, "A", "Y", {}, all, missing), ProblemError);
}

TEST(Dominates, Figure1) {
    EfficiencyGraph e = build_h1(fig1());
    EXPECT_TRUE(dominates(e, {"X", "T", "R"}, {"X", "Q", "R"}));
    EXPECT_TRUE(dominates(e, {"X", "T", "R"}, {"X", "K"}));
    EXPECT_FALSE(dominates(e, {"X", "K"}, {"X", "T", "R"}));
    EXPECT_THROW(dominates(e, {"X"}, {"X", "K"}), GraphError);
}

TEST(Dominates, Figure3Incomparable) {
    EfficiencyGraph e = build_h1(fig3());
    EXPECT_TRUE(dominates(e, {"T", "R"}, {"B", "Q"}));
    EXPECT_FALSE(dominates(e, {"B", "R"}, {"T", "Q"}));
    EXPECT_FALSE(dominates(e, {"T", "Q"}, {"B", "R"}));
}

TEST(Properties, ForbiddenNeverInH1) {
    for (const auto& inst : sweep(120)) {
        EfficiencyGraph e = build_h1(inst.problem);
        VertexSet forb = forbidden(inst.problem);
        for (const auto& v : e.candidates()) EXPECT_FALSE(forb.count(v)) << "seed " << inst.seed;
        for (const auto& v : inst.problem.latent()) EXPECT_FALSE(e.h1.contains(v)) << "seed " << inst.seed;
    }
}

TEST(Properties, PolicyInEverySeparator) {
    for (const auto& inst : sweep(60)) {
        EfficiencyGraph e = build_h1(inst.problem);
        if (e.policy.empty()) continue;
        SeparatorCatalog cat = enumerate_separators(e);
        for (const auto& z : cat.all_separators)
            for (const auto& l : e.policy) EXPECT_TRUE(z.count(l)) << "seed " << inst.seed;
    }
}

// Separation among survivors is the same before and after projecting out a
// set of vertices that is never conditioned on.
TEST(Properties, ProjectionPreservesSeparation) {
    std::mt19937_64 rng(21);
    for (int round = 0; round < 30; ++round) {
        UndirectedGraph h = moralize(random_dag(rng, 9, 0.35));
        std::vector<VertexId> vs;
        for (const auto& v : h.vertices()) vs.push_back(v);
        std::shuffle(vs.begin(), vs.end(), rng);
        VertexSet drop(vs.begin(), vs.begin() + 3);
        VertexId a = vs[3], y = vs[4];
        VertexSet rest(vs.begin() + 5, vs.end());
        UndirectedGraph p = project_out(h, drop);
        for (unsigned mask = 0; mask < (1u << rest.size()); ++mask) {
            VertexSet z;
            unsigned i = 0;
            for (const auto& v : rest)
                if (mask >> i++ & 1) z.insert(v);
            EXPECT_EQ(is_separator(h, a, y, z), is_separator(p, a, y, z));
        }
    }
}
