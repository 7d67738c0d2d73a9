#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace optadj;
using namespace fixtures;

TEST(DirectedGraph, RejectsSelfLoop) {
    DirectedGraph g;
    EXPECT_THROW(g.add_edge("A", "A"), GraphError);
}

TEST(DirectedGraph, EdgeBookkeeping) {
    DirectedGraph g = fig1_graph();
    EXPECT_EQ(g.vertex_count(), 11u);
    EXPECT_EQ(g.edge_count(), 12u);
    EXPECT_TRUE(g.has_edge("A", "M"));
    EXPECT_FALSE(g.has_edge("M", "A"));
    g.remove_edge("A", "M");
    EXPECT_EQ(g.edge_count(), 11u);
    EXPECT_TRUE(g.contains("M"));
}

TEST(IsAcyclic, Figure1) { EXPECT_TRUE(is_acyclic(fig1_graph())); }

TEST(IsAcyclic, TwoCycle) { EXPECT_FALSE(is_acyclic(digraph({{"A", "B"}, {"B", "A"}}))); }

TEST(IsAcyclic, EmptyGraph) { EXPECT_TRUE(is_acyclic(DirectedGraph{})); }

TEST(Ancestors, Figure1Relevant) {
    VertexSet expected = fig1_graph().vertices();
    expected.erase("F");
    EXPECT_EQ(ancestors(fig1_graph(), {"A", "Y", "X"}), expected);
}

TEST(Ancestors, IncludesSelf) { EXPECT_EQ(ancestors(fig1_graph(), {"B"}), (VertexSet{"B"})); }

TEST(Descendants, Figure1) { EXPECT_EQ(descendants(fig1_graph(), {"M"}), (VertexSet{"M", "Y"})); }

TEST(Descendants, UnknownVertexThrows) { EXPECT_THROW(descendants(fig1_graph(), {"Z"}), GraphError); }

TEST(InducedSubgraph, DropsF) {
    VertexSet keep = fig1_graph().vertices();
    keep.erase("F");
    DirectedGraph sub = induced_subgraph(fig1_graph(), keep);
    EXPECT_EQ(sub.edge_count(), 11u);
    EXPECT_FALSE(sub.contains("F"));
    EXPECT_TRUE(sub.has_edge("U", "Y"));
}

TEST(IsSeparator, Figure1) {
    UndirectedGraph h = fig1_h1();
    EXPECT_TRUE(is_separator(h, "A", "Y", {"X", "T", "R"}));
    EXPECT_FALSE(is_separator(h, "A", "Y", {"X", "Q"}));
    EXPECT_TRUE(is_separator(h, "A", "Y", {"X", "K"}));
}

TEST(IsSeparator, RejectsEndpointsInSet) {
    EXPECT_THROW(is_separator(fig1_h1(), "A", "Y", {"A"}), GraphError);
    EXPECT_THROW(is_separator(fig1_h1(), "A", "A", {}), GraphError);
    EXPECT_THROW(is_separator(fig1_h1(), "A", "Y", {"nope"}), GraphError);
}

TEST(IsMinimalSeparator, Figure1) {
    UndirectedGraph h = fig1_h1();
    EXPECT_TRUE(is_minimal_separator(h, "A", "Y", {"X", "T", "R"}));
    EXPECT_FALSE(is_minimal_separator(h, "A", "Y", {"X", "K", "Q", "R"}));
    EXPECT_FALSE(is_minimal_separator(h, "A", "Y", {"X", "Q"}));
}

TEST(FindPath, AvoidsBlocked) {
    auto path = find_path(fig1_h1(), {"A"}, {"Y"}, {"X"});
    ASSERT_TRUE(path);
    EXPECT_EQ(path->front(), "A");
    EXPECT_EQ(path->back(), "Y");
    for (std::size_t i = 1; i < path->size(); ++i) EXPECT_TRUE(fig1_h1().has_edge((*path)[i - 1], (*path)[i]));
}

TEST(Properties, AncestorDescendantDuality) {
    std::mt19937_64 rng(11);
    for (int round = 0; round < 40; ++round) {
        DirectedGraph g = random_dag(rng, 12, 0.3);
        for (const auto& u : g.vertices())
            for (const auto& w : g.vertices())
                ASSERT_EQ(ancestors(g, {w}).count(u) > 0, descendants(g, {u}).count(w) > 0);
    }
}

TEST(Properties, InducedSubgraphIdempotent) {
    std::mt19937_64 rng(12);
    for (int round = 0; round < 40; ++round) {
        DirectedGraph g = random_dag(rng, 10, 0.4);
        VertexSet keep;
        for (const auto& v : g.vertices())
            if (rng() % 2) keep.insert(v);
        DirectedGraph once = induced_subgraph(g, keep);
        EXPECT_EQ(induced_subgraph(once, keep), once);
    }
}

TEST(Properties, SeparatorMonotone) {
    UndirectedGraph h = fig1_h1();
    VertexSet candidates{"B", "K", "Q", "R", "T", "X"};
    std::vector<VertexId> c(candidates.begin(), candidates.end());
    for (unsigned mask = 0; mask < 64; ++mask) {
        VertexSet z;
        for (unsigned i = 0; i < 6; ++i)
            if (mask >> i & 1) z.insert(c[i]);
        if (!is_separator(h, "A", "Y", z)) continue;
        for (const auto& w : candidates) {
            VertexSet bigger = z;
            bigger.insert(w);
            EXPECT_TRUE(is_separator(h, "A", "Y", bigger));
        }
    }
}
