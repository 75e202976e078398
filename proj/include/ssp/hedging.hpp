#pragma once

#include <optional>

#include "ssp/market.hpp"
#include "ssp/measures.hpp"

namespace ssp {

/// Optimum of a linear expectation over a closed measure polytope.
struct ExpectationOptimum {
  Rational value;
  /// Optimal vertex returned by the simplex.
  Measure vertex;
  /// A strictly positive point of the optimal face, when the face has one.
  std::optional<Measure> equivalent_optimizer;
};

/// max E^Q[payoff] over the closed polytope of the given kind. Payoffs may be
/// signed. Throws DomainError when the polytope is empty.
ExpectationOptimum maximize_expectation(const MarketModel& model, const Claim& payoff,
                                        PolytopeKind kind = PolytopeKind::Supermartingale);

/// Cumulative consumption: nondecreasing along every path, zero at the root.
struct ConsumptionProcess {
  RationalVector cumulative;
};

struct HedgePrice {
  Rational value;
  /// The supremum over equivalent supermartingale measures is attained.
  bool attained_by_equivalent = false;
  /// Strictly positive optimizer when attained, otherwise an optimal boundary vertex.
  std::optional<Measure> witness_measure;
  std::optional<Strategy> witness_strategy;
  std::optional<ConsumptionProcess> witness_consumption;
};

/// Least initial capital that superreplicates a nonnegative claim, computed
/// as the maximum of E^Q[f] over the closed supermartingale-measure polytope.
/// Equivalent measures are dense in that polytope whenever one exists, so the
/// maximum equals the supremum over equivalent measures; attainment by an
/// equivalent measure is decided separately on the optimal face.
///
/// Throws NoEsmmError on markets with arbitrage and NegativePayoffError on
/// claims with a negative payoff.
HedgePrice superreplication_price(const MarketModel& model, const Claim& claim);

struct Superhedge {
  Rational initial_capital;
  Strategy strategy;
  ConsumptionProcess consumption;
};

/// Minimizes x over (x, H, C) with x + (H·S)_T − C_T = f on the leaves, wealth
/// x + (H·S) − C >= 0 on every node, C nondecreasing from C_root = 0, and no
/// short positions in prohibited assets.
Superhedge superhedge(const MarketModel& model, const Claim& claim);

/// Claims bounded below: price and hedge f + α with α = −min f, then shift
/// back by α.
HedgePrice superreplication_price_bounded_below(const MarketModel& model, const Claim& claim);
Superhedge superhedge_bounded_below(const MarketModel& model, const Claim& claim);

struct Attainability {
  bool attainable = false;
  Rational price;
  /// R* when attainable, otherwise the boundary optimal vertex.
  Measure evidence;
  /// Strategy of the minimal superhedge; f = price + (H·S)_T when attainable.
  std::optional<Strategy> strategy;
  /// (H·S) has zero drift under R* at every node and consumption vanishes.
  bool martingale_verified = false;
};

/// Whether the supremum of E^Q[f] over equivalent supermartingale measures
/// is attained. Signed claims are shifted to nonnegative ones first, which
/// leaves attainment unchanged.
Attainability is_attainable(const MarketModel& model, const Claim& claim);

/// Superreplication value at every node by backward recursion: V = f on the
/// leaves and, at an internal node, the maximum of E[V_child] over one-step
/// conditional measures satisfying the martingale/supermartingale constraints.
ValueProcess price_process(const MarketModel& model, const Claim& claim);

/// x + (H·S)_T − C_T at every leaf minus f, for witness checking.
RationalVector hedge_residual(const MarketModel& model, const Claim& claim, const Superhedge& hedge);

}  // namespace ssp
