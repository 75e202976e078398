#include <gtest/gtest.h>

#include "ssp/ftap.hpp"
#include "support/builders.hpp"

namespace ssp {
namespace {

using testing::one_period_market;
using testing::q;

TEST(EsmmFeasibility, BinomialWithoutShortSales) {
  auto m = one_period_market(q(1), {q(2), q(1, 2)}, 0);
  auto measure = esmm_feasibility(m);
  ASSERT_TRUE(measure);
  EXPECT_TRUE(measure->is_equivalent());
  EXPECT_TRUE(classify_measure(m, *measure).is_esmm());
  // Oracle: q_up = 1/4 satisfies 2 q + (1 − q)/2 <= 1.
  EXPECT_LE(q(2) * q(1, 4) + q(1, 2) * q(3, 4), 1);
}

TEST(EsmmFeasibility, DownFactorOneHasNone) {
  auto m = one_period_market(q(1), {q(2), q(1)}, 0);
  EXPECT_FALSE(esmm_feasibility(m));
  for (int k = 1; k < 1000; ++k) {
    const Rational qu(k, 1000);
    EXPECT_GT(2 * qu + (1 - qu), 1);
  }
}

TEST(EsmmFeasibility, ConstantAsset) {
  auto tree = EventTree::from_parents({std::nullopt, 0, 0, 1, 2}, {q(1), q(1, 3), q(2, 3), q(1), q(1)});
  MarketModel m(tree, {{q(5)}, {q(5)}, {q(5)}, {q(5)}, {q(5)}}, 1);
  auto measure = esmm_feasibility(m);
  ASSERT_TRUE(measure);
  EXPECT_TRUE(classify_measure(m, Measure::reference(tree)).is_esmm());
  EXPECT_FALSE(find_arbitrage(m));
}

TEST(FindArbitrage, BuyAndHoldOnDownFactorOne) {
  auto m = one_period_market(q(1), {q(2), q(1)}, 0);
  auto arb = find_arbitrage(m);
  ASSERT_TRUE(arb);
  EXPECT_GT(arb->strategy.holdings[0][0], 0);
  EXPECT_TRUE(is_admissible(m, arb->strategy).admissible);
  // Positive multiple of the payoff (1, 0).
  EXPECT_GT(arb->payoff.payoff[0], 0);
  EXPECT_EQ(arb->payoff.payoff[1], 0);
}

TEST(FindArbitrage, ShortingADecreasingAsset) {
  auto tree = EventTree::from_parents({std::nullopt, 0, 0, 1, 1, 2, 2},
                                      {q(1), q(1, 2), q(1, 2), q(1, 2), q(1, 2), q(1, 2), q(1, 2)});
  MarketModel m(tree, {{q(8)}, {q(6)}, {q(5)}, {q(5)}, {q(4)}, {q(3)}, {q(2)}}, 1);
  EXPECT_FALSE(esmm_feasibility(m));
  auto arb = find_arbitrage(m);
  ASSERT_TRUE(arb);
  EXPECT_LT(arb->strategy.holdings[0][0], 0);
  for (const auto& x : arb->payoff.payoff) EXPECT_GT(x, 0);
  // Without short sales the falling asset is a harmless supermartingale.
  EXPECT_TRUE(esmm_feasibility(m.with_shortable_count(0)));
}

TEST(FindArbitrage, AbsentWhenReferenceIsEsmm) {
  auto m = one_period_market(q(2), {q(3), q(1)}, 1);
  EXPECT_TRUE(classify_measure(m, Measure::reference(m.tree())).is_esmm());
  EXPECT_FALSE(find_arbitrage(m));
  auto report = check_arbitrage(m);
  EXPECT_TRUE(report.nflvr);
  EXPECT_TRUE(report.measure);
  EXPECT_FALSE(report.arbitrage);
}

TEST(CheckArbitrage, ReportsArbitrageWitness) {
  auto report = check_arbitrage(one_period_market(q(1), {q(2), q(1)}, 0));
  EXPECT_FALSE(report.nflvr);
  EXPECT_FALSE(report.measure);
  EXPECT_TRUE(report.arbitrage);
}

}  // namespace
}  // namespace ssp
