#pragma once

#include <optional>
#include <vector>

#include "ssp/ftap.hpp"
#include "ssp/market.hpp"

namespace ssp {

/// Strictly positive adapted process used as unit of account.
struct NumeraireProcess {
  RationalVector value;

  /// Throws NonpositiveNumeraireError / StructuralError.
  void validate(const EventTree& tree) const;
};

/// Prices re-expressed in units of V: assets (1/V, S^1/V, ..., S^N/V). The
/// prepended 1/V is shortable, the original partition is kept for S/V.
MarketModel change_numeraire(const MarketModel& model, const NumeraireProcess& numeraire);

/// Holdings over N + 2 components, read against (S/V, 1/V, 1) on the deflated
/// side and (S, 1, V) on the original side.
struct TransportCheck {
  /// H·M = HM − H_0 M_0 at every node, M = (S/V, 1/V, 1).
  bool deflated_identity = false;
  /// H·N = HN − H_0 N_0 at every node, N = (S, 1, V).
  bool original_identity = false;
  std::vector<bool> deflated_per_node;
  std::vector<bool> original_per_node;

  bool agree() const { return deflated_identity == original_identity; }
};

/// Evaluates both self-financing identities exactly. At node n the position
/// multiplying the price is the one carried into n (the root's own holdings at
/// the root) and H_0 is the root position.
TransportCheck self_financing_transport(const MarketModel& model, const NumeraireProcess& numeraire,
                                        const Strategy& strategy);

struct NumeraireNaCheck {
  /// No arbitrage in the deflated market (1/V, S/V).
  bool na = false;
  /// V_T − V_0 is maximal among (H·(S, V))_T with H_0 = (0, 1), no short
  /// position in prohibited S, and (H^1, H^2 − 1)·(S, V) >= −αV.
  bool maximal = false;
  bool agree = false;
  std::optional<Arbitrage> arbitrage;
  /// Strictly dominating (H^1, H^2 − 1) over assets (V, S).
  std::optional<Strategy> dominator;
  Rational holdings_box;
  Rational floor_box;
};

NumeraireNaCheck na_after_numeraire_check(const MarketModel& model, const NumeraireProcess& numeraire,
                                          const Rational& scale = 1);

}  // namespace ssp
