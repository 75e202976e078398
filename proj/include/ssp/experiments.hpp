#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "ssp/market.hpp"

/// Desk-scale reproductions of the continuous-time examples. Floating point
/// is confined to this namespace; lattice prices are still exact rationals.
namespace ssp::experiments {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

// ---------------------------------------------------------------------------
// Geometric Brownian motion under a constant Girsanov tilt.

enum class BsSampler {
  /// B_T drawn under P, each path weighted by dQ^γ/dP = exp(−γB_T − γ²T/2).
  ImportanceWeights,
  /// B_T drawn under Q^γ directly, where it is Gaussian with mean −γT.
  TiltedDrift,
};

struct BsTiltParams {
  double s0 = 1.0;
  double mu = 0.0;
  double sigma = 0.2;
  double gamma = 0.0;
  double maturity = 1.0;
  std::size_t paths = 10000;
  std::uint64_t seed = kDefaultSeed;
  BsSampler sampler = BsSampler::ImportanceWeights;
};

struct McEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
  double closed_form = 0.0;
  std::size_t paths = 0;
  std::uint64_t seed = 0;

  /// (estimate − closed_form) / standard_error.
  double z_score() const;
};

/// (1/S0)·exp((σγ − μ + σ²)T).
double bs_tilted_closed_form(double s0, double mu, double sigma, double gamma, double maturity);

/// Monte-Carlo estimate of E^{Q^γ}[1/S_T]. The importance-weighted sampler
/// has weight variance exp(γ²T) − 1, so for large γ the drift sampler is the
/// usable one. Requires σ > 0, γ >= μ/σ and at least 10^4 paths. Paths are
/// drawn from std::mt19937_64 seeded with `seed` and summed in path order.
McEstimate bs_tilted_expectation(const BsTiltParams& params);

// ---------------------------------------------------------------------------
// Stochastic exponential S = E(R) with deterministic [R, R]_T.

struct StochexpRow {
  double alpha = 0.0;
  /// exp((1/2 + α)[R, R]_T).
  double closed_form = 0.0;
  /// E^{Q^α}[exp(−R_T)] on a fine symmetric random-walk lattice for R, with
  /// the tilted up-probability (1 − αΔ)/2; absent when αΔ > 1.
  std::optional<double> lattice_tilted;
  /// Exact LP superreplication price of exp(−R_T) on the coarse lattice over
  /// supermartingale measures whose up-probability is at least (1 − αΔ)/2.
  double lp_price = 0.0;
};

struct StochexpParams {
  double quadratic_variation = 1.0;
  int fine_steps = 20000;
  int coarse_steps = 8;
};

std::vector<StochexpRow> stochexp_alpha_curve(const StochexpParams& params, std::span<const double> alphas);

// ---------------------------------------------------------------------------
// Binomial lattice families, priced with the exact superreplication LP.

enum class LatticeKind { Digital, Put, Reciprocal };

struct LatticeParams {
  Rational s0 = 1;
  Rational up = 2;
  Rational down = Rational(1, 2);
  Rational strike = 1;
};

/// Rational CRR factors: up ≈ exp(σ√Δt) rounded to the given denominator,
/// down = 1/up exactly.
std::pair<Rational, Rational> crr_factors(double sigma, double dt, long denominator = 1000000);

/// Full (non-recombining) binomial event tree of the given depth with one
/// asset, equal reference branch weights and no short sales unless
/// `shortable` is set.
MarketModel binomial_model(int depth, const Rational& s0, const Rational& up, const Rational& down,
                           bool shortable = false);

/// Payoff of the lattice family on the terminal nodes of a binomial model.
Claim lattice_claim(const MarketModel& model, LatticeKind kind, const LatticeParams& params);

struct LatticeRow {
  int depth = 0;
  Rational price;
  bool attained_by_equivalent = false;
  /// Digital: 1. Put: K − down^n·S0. Reciprocal: 1/(S0·down^n).
  Rational closed_form;
  /// price(n) / price(n − 1); absent for the first row or a zero predecessor.
  std::optional<double> growth;
};

/// Superreplication prices with no short sales for each depth. Throws
/// DomainError when the one-period market already admits arbitrage.
std::vector<LatticeRow> lattice_family_study(LatticeKind kind, std::span<const int> depths,
                                             const LatticeParams& params);

// ---------------------------------------------------------------------------
// CSV output. Every table starts with a "# seed=<n>" line.

void write_bs_csv(std::ostream& out, std::span<const BsTiltParams> grid, std::span<const McEstimate> rows);
void write_stochexp_csv(std::ostream& out, const StochexpParams& params, std::span<const StochexpRow> rows,
                        std::uint64_t seed);
void write_lattice_csv(std::ostream& out, LatticeKind kind, std::span<const LatticeRow> rows, std::uint64_t seed);

}  // namespace ssp::experiments
