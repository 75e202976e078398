#pragma once

#include <optional>

#include "ssp/market.hpp"
#include "ssp/measures.hpp"

/// No-arbitrage decisions. On a finite tree the cone of superreplicable
/// bounded payoffs is closed, so NFLVR and NA coincide and both are decided
/// exactly here.
namespace ssp {

/// A strictly positive measure under which shortable assets are martingales
/// and the others supermartingales, if one exists.
std::optional<Measure> esmm_feasibility(const MarketModel& model);

struct Arbitrage {
  Strategy strategy;
  /// (H·S)_T: nonnegative everywhere, positive somewhere.
  Claim payoff;
};

/// Maximizes the summed terminal gains over holdings in the unit box subject
/// to nonnegative terminal gains; a positive optimum is an arbitrage.
std::optional<Arbitrage> find_arbitrage(const MarketModel& model);

struct FtapReport {
  bool nflvr = false;
  std::optional<Measure> measure;
  std::optional<Arbitrage> arbitrage;
};

/// ESMM search first; the arbitrage search runs only when none exists.
FtapReport check_arbitrage(const MarketModel& model);

}  // namespace ssp
