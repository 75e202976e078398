#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "ssp/errors.hpp"
#include "ssp/experiments.hpp"
#include "ssp/ftap.hpp"

namespace ssp::experiments {
namespace {

TEST(BsTilt, MartingaleTiltClosedForm) {
  const double sigma = 0.3, mu = 0.06, s0 = 2.0, t = 1.5;
  EXPECT_DOUBLE_EQ(bs_tilted_closed_form(s0, mu, sigma, mu / sigma, t), std::exp(sigma * sigma * t) / s0);
}

TEST(BsTilt, ReferenceParametersMatchWithinThreeStderr) {
  BsTiltParams p;  // S0 = 1, μ = 0, σ = 0.2, T = 1, γ = 0
  EXPECT_NEAR(bs_tilted_closed_form(p.s0, p.mu, p.sigma, p.gamma, p.maturity), std::exp(0.04), 1e-15);
  EXPECT_NEAR(std::exp(0.04), 1.0408, 1e-4);
  McEstimate est = bs_tilted_expectation(p);
  EXPECT_LT(std::abs(est.z_score()), 3.0) << est.estimate << " vs " << est.closed_form;
}

TEST(BsTilt, GrowsWithGamma) {
  double previous = 0.0;
  for (double gamma : {0.0, 0.5, 1.0, 1.5, 2.0}) {
    BsTiltParams p;
    p.gamma = gamma;
    McEstimate est = bs_tilted_expectation(p);
    EXPECT_LT(std::abs(est.z_score()), 3.0);
    EXPECT_GT(est.estimate, previous);
    previous = est.estimate;
  }
}

TEST(BsTilt, DriftSamplerReachesLargeTilts) {
  double previous = 0.0;
  for (double gamma : {0.0, 5.0, 10.0, 20.0}) {
    BsTiltParams p;
    p.gamma = gamma;
    p.sampler = BsSampler::TiltedDrift;
    McEstimate est = bs_tilted_expectation(p);
    EXPECT_LT(std::abs(est.z_score()), 3.0);
    EXPECT_GT(est.estimate, previous);
    previous = est.estimate;
  }
  EXPECT_GT(previous, std::exp(0.2 * 20.0));
}

TEST(BsTilt, SeedReproducible) {
  BsTiltParams p;
  EXPECT_EQ(bs_tilted_expectation(p).estimate, bs_tilted_expectation(p).estimate);
}

TEST(BsTilt, DomainErrors) {
  BsTiltParams p;
  p.sigma = 0.0;
  EXPECT_THROW(bs_tilted_expectation(p), DomainError);
  p = {};
  p.mu = 0.1;
  p.gamma = 0.0;  // below μ/σ = 0.5
  EXPECT_THROW(bs_tilted_expectation(p), DomainError);
  p = {};
  p.paths = 100;
  EXPECT_THROW(bs_tilted_expectation(p), DomainError);
}

TEST(Stochexp, ClosedFormPoints) {
  const double alphas[] = {0.0, 1.0};
  auto rows = stochexp_alpha_curve({1.0, 2000, 4}, alphas);
  EXPECT_DOUBLE_EQ(rows[0].closed_form, std::exp(0.5));
  EXPECT_DOUBLE_EQ(rows[1].closed_form, std::exp(1.5));
  ASSERT_TRUE(rows[0].lattice_tilted);
  EXPECT_NEAR(*rows[0].lattice_tilted, std::exp(0.5), 1e-2);
  EXPECT_NEAR(*rows[1].lattice_tilted, std::exp(1.5), 5e-2);
}

TEST(Stochexp, LadderStrictlyIncreasing) {
  std::vector<double> alphas;
  for (int a = 0; a <= 8; ++a) alphas.push_back(a);
  auto rows = stochexp_alpha_curve({}, alphas);
  for (std::size_t k = 1; k < rows.size(); ++k) {
    EXPECT_GT(rows[k].closed_form, rows[k - 1].closed_form);
    EXPECT_GE(rows[k].lp_price, rows[k - 1].lp_price);
  }
  EXPECT_GT(rows.back().lp_price, rows.front().lp_price);
}

TEST(Stochexp, NonpositiveQuadraticVariation) {
  const double alphas[] = {0.0};
  EXPECT_THROW(stochexp_alpha_curve({0.0, 10, 2}, alphas), DomainError);
}

TEST(Lattice, DigitalIsOneAtEveryDepth) {
  const int depths[] = {1, 2, 3, 4};
  for (const auto& row : lattice_family_study(LatticeKind::Digital, depths, {})) {
    EXPECT_EQ(row.price, 1);
    EXPECT_FALSE(row.attained_by_equivalent);
  }
}

TEST(Lattice, PutDepthFour) {
  const int depths[] = {4};
  auto rows = lattice_family_study(LatticeKind::Put, depths, {});
  EXPECT_EQ(rows[0].price, Rational(15, 16));
  EXPECT_EQ(rows[0].closed_form, Rational(15, 16));
}

TEST(Lattice, ReciprocalGrows) {
  const int depths[] = {1, 2};
  auto rows = lattice_family_study(LatticeKind::Reciprocal, depths, {});
  EXPECT_GT(rows[1].price, rows[0].price);
  ASSERT_TRUE(rows[1].growth);
  EXPECT_GT(*rows[1].growth, 1.0);
}

TEST(Lattice, ArbitrageParametersRejected) {
  const int depths[] = {1};
  LatticeParams p;
  p.down = 1;
  EXPECT_THROW(lattice_family_study(LatticeKind::Put, depths, p), DomainError);
  p.down = Rational(3, 2);
  p.up = 2;
  EXPECT_THROW(lattice_family_study(LatticeKind::Put, depths, p), DomainError);
}

TEST(Lattice, CrrFactorsAreReciprocal) {
  auto [up, down] = crr_factors(0.2, 0.25);
  EXPECT_EQ(up * down, 1);
  EXPECT_NEAR(to_double(up), std::exp(0.1), 1e-6);
  EXPECT_TRUE(esmm_feasibility(binomial_model(1, 1, up, down)));
}

TEST(Csv, EmbedsSeed) {
  BsTiltParams p;
  p.seed = 7;
  const BsTiltParams grid[] = {p};
  const McEstimate rows[] = {bs_tilted_expectation(p)};
  std::ostringstream out;
  write_bs_csv(out, grid, rows);
  EXPECT_EQ(out.str().rfind("# seed=7\n", 0), 0u);
}

}  // namespace
}  // namespace ssp::experiments
