#include <gtest/gtest.h>

#include "ssp/errors.hpp"
#include "ssp/measures.hpp"
#include "support/builders.hpp"

namespace ssp {
namespace {

using testing::one_period_market;
using testing::q;

Measure weights(RationalVector w) { return Measure{std::move(w)}; }

TEST(ConditionalExpectation, RootIsPlainExpectation) {
  auto tree = testing::one_period_tree({q(1, 3), q(2, 3)});
  EXPECT_EQ(conditional_expectation(tree, weights({q(1, 3), q(2, 3)}), Claim{{q(3), q(0)}}, 0), 1);
}

TEST(ConditionalExpectation, ConstantClaim) {
  auto tree = EventTree::from_parents({std::nullopt, 0, 0, 1, 1, 2}, {q(1), q(1, 2), q(1, 2), q(1, 2), q(1, 2), q(1)});
  Measure m = weights({q(1, 5), q(3, 10), q(1, 2)});
  for (NodeId n : tree.bfs_order()) EXPECT_EQ(conditional_expectation(tree, m, Claim{{q(7), q(7), q(7)}}, n), 7);
}

TEST(ConditionalExpectation, ZeroMassNodeThrows) {
  auto tree = EventTree::from_parents({std::nullopt, 0, 0, 1, 1, 2}, {q(1), q(1, 2), q(1, 2), q(1, 2), q(1, 2), q(1)});
  Measure m = weights({q(0), q(0), q(1)});
  EXPECT_THROW(conditional_expectation(tree, m, Claim{{q(1), q(2), q(3)}}, 1), ZeroMassError);
  auto process = conditional_expectation_process(tree, m, Claim{{q(1), q(2), q(3)}});
  EXPECT_FALSE(process[1]);
  EXPECT_EQ(*process[2], 3);
}

TEST(ConditionalExpectation, TowerProperty) {
  auto tree = EventTree::from_parents({std::nullopt, 0, 0, 1, 1, 2, 2},
                                      {q(1), q(1, 2), q(1, 2), q(1, 2), q(1, 2), q(1, 2), q(1, 2)});
  Measure m = weights({q(1, 10), q(2, 10), q(3, 10), q(4, 10)});
  Claim f{{q(5), q(-1), q(2, 3), q(4)}};
  auto mass = node_masses(tree, m);
  for (NodeId n : tree.internal_nodes()) {
    Rational avg = 0;
    for (NodeId c : tree.children(n)) avg += mass[c] * conditional_expectation(tree, m, f, c);
    EXPECT_EQ(avg / mass[n], conditional_expectation(tree, m, f, n));
  }
}

TEST(ClassifyMeasure, ReferenceMartingale) {
  auto m = one_period_market(q(1), {q(3, 2), q(1, 2)}, 1);
  auto v = classify_measure(m, Measure::reference(m.tree()));
  EXPECT_TRUE(v.is_elmm());
  ASSERT_TRUE(v.tag);
  EXPECT_EQ(*v.tag, MeasureClass::ELMM);
}

TEST(ClassifyMeasure, StrictSupermartingale) {
  auto m = one_period_market(q(1), {q(2), q(1, 2)}, 0);
  auto v = classify_measure(m, weights({q(1, 4), q(3, 4)}));
  // 2·(1/4) + (1/2)(3/4) = 7/8 < 1.
  EXPECT_EQ(q(2) * q(1, 4) + q(1, 2) * q(3, 4), q(7, 8));
  EXPECT_EQ(v.per_asset[0], AssetBehaviour::Supermartingale);
  EXPECT_TRUE(v.is_esmm());
  EXPECT_FALSE(v.is_elmm());
  // With the asset shortable the same measure is not an ESMM.
  EXPECT_FALSE(classify_measure(m.with_shortable_count(1), weights({q(1, 4), q(3, 4)})).is_esmm());
}

TEST(ClassifyMeasure, OneThirdIsMartingale) {
  auto m = one_period_market(q(1), {q(2), q(1, 2)}, 1);
  auto v = classify_measure(m, weights({q(1, 3), q(2, 3)}));
  EXPECT_EQ(v.per_asset[0], AssetBehaviour::Martingale);
  EXPECT_TRUE(v.is_elmm());
}

TEST(ClassifyMeasure, BoundaryMeasureIsNotEquivalent) {
  auto m = one_period_market(q(1), {q(2), q(1, 2)}, 0);
  auto v = classify_measure(m, weights({q(0), q(1)}));
  EXPECT_TRUE(v.constraints_hold);
  EXPECT_FALSE(v.equivalent);
  ASSERT_TRUE(v.tag);
  EXPECT_EQ(*v.tag, MeasureClass::AbsolutelyContinuousSupermartingale);
}

TEST(Measure, ValidateRejectsBadWeights) {
  auto tree = testing::one_period_tree({q(1, 2), q(1, 2)});
  EXPECT_THROW(weights({q(1, 2), q(1, 3)}).validate(tree), DomainError);
  EXPECT_THROW(weights({q(3, 2), q(-1, 2)}).validate(tree), DomainError);
  EXPECT_THROW(weights({q(1)}).validate(tree), StructuralError);
}

TEST(MeasurePolytope, BinomialRows) {
  auto m = one_period_market(q(1), {q(2), q(1, 2)}, 0);
  auto lp = measure_polytope(m, PolytopeKind::Supermartingale).build();
  EXPECT_TRUE(lp::is_feasible(lp, RationalVector{q(1, 4), q(3, 4)}));
  EXPECT_TRUE(lp::is_feasible(lp, RationalVector{q(1, 3), q(2, 3)}));
  EXPECT_FALSE(lp::is_feasible(lp, RationalVector{q(1, 2), q(1, 2)}));
  auto mart = measure_polytope(m, PolytopeKind::Martingale).build();
  EXPECT_FALSE(lp::is_feasible(mart, RationalVector{q(1, 4), q(3, 4)}));
}

}  // namespace
}  // namespace ssp
