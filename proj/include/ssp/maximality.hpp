#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ssp/hedging.hpp"
#include "ssp/market.hpp"
#include "ssp/measures.hpp"

namespace ssp {

/// Replicating strategy H with (H·S)_T = f and no short positions in
/// prohibited assets, if one exists.
std::optional<Strategy> replicate_from_zero(const MarketModel& model, const Claim& claim);

/// Two-asset auxiliary market (a + (H·S), S) used by B-maximality. The first
/// asset is the value process shifted by a = max(0, −min (H·S)) so that prices
/// stay nonnegative; it is shortable, as are the original shortable assets.
MarketModel auxiliary_market(const MarketModel& model, const Strategy& strategy);

struct BMaximality {
  bool maximal = true;
  /// Holdings box and floor-coefficient box (α, β) used by the search.
  Rational holdings_box;
  Rational floor_box;
  /// Strictly dominating strategy in the auxiliary market, as (H^1 − 1, H^2).
  std::optional<Strategy> dominator;
};

/// Whether f = (H·S)_T is maximal among payoffs ((H^1, H^2)·(S^1, S^2))_T with
/// H^2 >= 0 and (H^1 − 1, H^2)·(S^1, S^2) >= −β − αS^1. The unbounded α, β and
/// holdings are searched inside boxes scaled by `scale`; since the dominance
/// cone is invariant under positive scaling the verdict does not depend on it.
/// Throws InadmissibleStrategyError for inadmissible H.
BMaximality maximality_in_B(const MarketModel& model, const Strategy& strategy, const Rational& scale = 1);

struct KMaximality {
  /// No admissible K with (K·S)_T >= f everywhere and > f somewhere.
  bool maximal = true;
  /// f itself is a terminal gain (K·S)_T.
  bool in_K = false;
  std::optional<Strategy> dominator;
};

/// Decided by maximizing sum((K·S)_T − f) subject to (K·S)_T >= f. Under an
/// ESMM this program is bounded without holding boxes. Throws NoEsmmError.
KMaximality is_maximal_in_K(const MarketModel& model, const Claim& claim);

/// Every vertex of the closed all-martingale measure polytope. Vertices are
/// assembled from the one-step vertices at each node. Throws DomainError
/// beyond `limit` candidates.
std::vector<Measure> elmm_vertices(const MarketModel& model, std::size_t limit = 200000);

struct MaximalityReport {
  // (ii): sup over ESMMs of E^Q[f] equals 0 and is attained by some R*.
  struct SupAttained {
    bool holds = false;
    Rational max_expectation;
    Measure vertex;
    std::optional<Measure> r_star;
  } sup_attained;

  // (iii): f = (H·S)_T with (H·S) an R*-martingale for some ESMM R*.
  // Decided from the replication program and the zero-expectation face,
  // independently of (ii).
  struct MartingaleReplication {
    bool holds = false;
    bool replicable = false;
    std::optional<Strategy> strategy;
    std::optional<Measure> r_star;
  } martingale_replication;

  // (iv): bounded f, nonempty set of equivalent martingale measures; E^R[f] = 0
  // and zero drift of (H·S) at every vertex R of the martingale polytope.
  struct AllElmmMartingale {
    bool applicable = false;
    bool holds = false;
    std::size_t vertices_checked = 0;
    std::optional<Measure> counterexample;
  } all_elmm_martingale;

  // (i): auxiliary market NFLVR and maximality in B, for the replicating
  // strategy found by (iii).
  struct AuxiliaryMaximal {
    bool evaluated = false;
    bool auxiliary_nflvr = false;
    bool maximal_in_B = false;
    bool holds = false;
  } auxiliary_maximal;

  /// The R* of (ii) also makes the (iii) strategy a martingale.
  bool same_witness = false;
};

/// Per-condition verdicts of the maximal-claims characterization. Throws
/// NoEsmmError when the market admits arbitrage.
MaximalityReport classify_maximal(const MarketModel& model, const Claim& claim);

}  // namespace ssp
