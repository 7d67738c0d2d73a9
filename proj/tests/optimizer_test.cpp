#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace optadj;
using namespace fixtures;

TEST(OptimalMinCost, Figure1) {
    AdjustmentResult r = optimal_min_cost(fig1());
    ASSERT_TRUE(r.exists);
    EXPECT_EQ(r.optimal_set, (VertexSet{"X", "T", "R"}));
    EXPECT_EQ(r.total_cost, Rational(3));
    EXPECT_EQ(r.flow_value, 3);
    EXPECT_EQ(r.big_m, 11);
    EXPECT_EQ(r.h1_vertices, 8u);
    EXPECT_EQ(r.h1_edges, 12u);
}

TEST(OptimalMinCost, Figure1CostVariant) {
    AdjustmentResult r = optimal_min_cost(fig1({{"B", 1}, {"R", 2}}));
    EXPECT_EQ(r.optimal_set, (VertexSet{"X", "B", "T"}));
    EXPECT_EQ(r.total_cost, Rational(3));
}

TEST(OptimalMinCost, Figure3) {
    AdjustmentResult r = optimal_min_cost(fig3());
    EXPECT_EQ(r.optimal_set, (VertexSet{"B", "Q"}));
    EXPECT_EQ(r.total_cost, Rational(2));
}

TEST(OptimalMinCost, DecimalCosts) {
    AdjustmentResult r = optimal_min_cost(fig1({{"X", parse_decimal("0.5")}, {"T", parse_decimal("0.125")}}));
    EXPECT_EQ(r.optimal_set, (VertexSet{"X", "T", "R"}));
    EXPECT_EQ(r.total_cost, Rational(13, 8));
    EXPECT_EQ(r.scale, 8);
}

TEST(OptimalMinCost, DirectEffectOnlyIsEmptySet) {
    DirectedGraph g = digraph({{"A", "Y"}});
    AdjustmentResult r = optimal_min_cost(CausalProblem(g, "A", "Y", {}, g.vertices(), {}));
    EXPECT_TRUE(r.exists);
    EXPECT_TRUE(r.optimal_set.empty());
    EXPECT_EQ(r.total_cost, Rational(0));
}

TEST(OptimalMinCost, HiddenConfounderHasNoSet) {
    DirectedGraph g = digraph({{"U", "A"}, {"U", "Y"}, {"A", "Y"}});
    AdjustmentResult r = optimal_min_cost(CausalProblem(g, "A", "Y", {}, {"A", "Y"}, {}));
    EXPECT_FALSE(r.exists);
    EXPECT_GE(r.flow_value, r.big_m);
    EXPECT_TRUE(r.optimal_set.empty());
}

TEST(OptimalMinCardinality, Figures) {
    EXPECT_EQ(optimal_min_cardinality(fig1()).optimal_set, (VertexSet{"X", "K"}));
    EXPECT_EQ(optimal_min_cardinality(fig3()).optimal_set, (VertexSet{"T", "R"}));
}

TEST(MapD, Figure1) {
    EfficiencyGraph e = build_h1(fig1());
    FlowNetwork n = build_network(e);
    Cut c = map_d(e, n, {"X", "T", "R"});
    Cut expected;
    for (const char* v : {"X", "T", "R"}) expected.members.insert(n.prime(v));
    expected.members.insert(n.source());
    EXPECT_EQ(c, expected);

    Cut xk = map_d(e, n, {"X", "K"});
    EXPECT_EQ(cut_capacity(n, xk), Capacity::finite(5));
    EXPECT_EQ(crossing_arcs(n, xk), (std::vector<std::size_t>{n.internal_arc("K"), n.internal_arc("X")}));
    EXPECT_THROW(map_d(e, n, {"X", "K", "Q"}), GraphError);
}

TEST(MapD, SingleVertex) {
    EfficiencyGraph e;
    e.treatment = "A";
    e.outcome = "Y";
    e.h1 = ugraph({{"A", "W"}, {"W", "Y"}});
    e.candidate_costs = {{"W", 2}};
    FlowNetwork n = build_network(e);
    EXPECT_EQ(map_d(e, n, {"W"}).members, (std::set<NodeId>{n.double_prime("Y"), n.prime("W")}));
}

TEST(MapD, EmptySeparatorIsZeroCut) {
    EfficiencyGraph e;
    e.treatment = "A";
    e.outcome = "Y";
    e.h1 = ugraph({{"A", "V"}, {"W", "Y"}});
    e.candidate_costs = {{"V", 1}, {"W", 1}};
    FlowNetwork n = build_network(e);
    Cut c = map_d(e, n, {});
    EXPECT_EQ(cut_capacity(n, c), Capacity::finite(0));
    EXPECT_TRUE(map_h(n, c).empty());
}

TEST(MapH, RejectsInfiniteCut) {
    FlowNetwork n = build_network(build_h1(fig1()));
    Cut c;
    c.members.insert(n.source());
    EXPECT_THROW(map_h(n, c), FlowError);
}

TEST(ValidateAdjustment, Figure1) {
    CausalProblem p = fig1();
    ValidationReport xk = validate_adjustment(p, {"X", "K"});
    EXPECT_EQ(xk.status, ValidationReport::Status::valid);
    EXPECT_TRUE(xk.minimal);
    EXPECT_EQ(xk.cost, Rational(5));

    ValidationReport x = validate_adjustment(p, {"X"});
    EXPECT_EQ(x.status, ValidationReport::Status::invalid);
    ASSERT_GE(x.witness.size(), 2u);
    EXPECT_EQ(x.witness.front(), "A");
    EXPECT_EQ(x.witness.back(), "Y");
    EfficiencyGraph e = build_h1(p);
    for (std::size_t i = 1; i < x.witness.size(); ++i) {
        EXPECT_TRUE(e.h1.has_edge(x.witness[i - 1], x.witness[i]));
        EXPECT_NE(x.witness[i], "X");
    }

    ValidationReport xkq = validate_adjustment(p, {"X", "K", "Q"});
    EXPECT_EQ(xkq.status, ValidationReport::Status::valid);
    EXPECT_FALSE(xkq.minimal);
    EXPECT_EQ(xkq.cost, Rational(6));
}

TEST(ValidateAdjustment, RejectionReasons) {
    CausalProblem p = fig1();
    using S = ValidationReport::Status;
    EXPECT_EQ(validate_adjustment(p, {"T", "R"}).status, S::invalid);  // misses L
    EXPECT_EQ(validate_adjustment(p, {"X", "K", "M"}).status, S::invalid);
    EXPECT_EQ(validate_adjustment(p, {"X", "K", "U"}).status, S::invalid);
    EXPECT_EQ(validate_adjustment(p, {"X", "A"}).status, S::invalid);
    EXPECT_EQ(validate_adjustment(p, {"X", "K", "F"}).status, S::not_checkable);
    EXPECT_THROW(validate_adjustment(p, {"X", "nope"}), GraphError);
}

TEST(Properties, MapRoundTripOnMinimalSeparators) {
    for (const auto& inst : sweep(100)) {
        EfficiencyGraph e = build_h1(inst.problem);
        FlowNetwork n = build_network(e);
        SeparatorCatalog cat = enumerate_separators(e);
        for (const auto& z : cat.minimal) {
            Cut c = map_d(e, n, z);
            EXPECT_EQ(map_h(n, c), z) << "seed " << inst.seed;
            EXPECT_EQ(cut_capacity(n, c).value(), scaled_cost(e.cost_of(z), n.scale()));
        }
    }
}
