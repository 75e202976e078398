#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ssp/lp.hpp"
#include "ssp/market.hpp"

namespace ssp {

/// Probability measure on the terminal nodes, indexed like EventTree::leaves().
/// Zero weights are allowed so that boundary points of measure polytopes are
/// representable.
struct Measure {
  RationalVector terminal_weight;

  /// Throws DomainError unless weights are nonnegative and sum to one.
  void validate(const EventTree& tree) const;
  /// Every terminal weight strictly positive (the reference measure charges
  /// every leaf).
  bool is_equivalent() const;

  static Measure reference(const EventTree& tree);
};

enum class MeasureClass { ESMM, ELMM, AbsolutelyContinuousSupermartingale };
enum class AssetBehaviour { Martingale, Supermartingale, Neither };

std::string to_string(MeasureClass tag);
std::string to_string(AssetBehaviour behaviour);

struct MeasureVerdict {
  std::vector<AssetBehaviour> per_asset;
  bool equivalent = false;
  /// Shortable assets martingales, the rest supermartingales.
  bool constraints_hold = false;
  bool all_martingales = false;
  /// ELMM when equivalent and every asset is a martingale, ESMM when
  /// equivalent and constraints hold, AbsolutelyContinuousSupermartingale when
  /// the constraints hold on a boundary measure; absent otherwise.
  std::optional<MeasureClass> tag;

  bool is_esmm() const { return equivalent && constraints_hold; }
  bool is_elmm() const { return equivalent && all_martingales; }
};

/// Mass of every node (sum of terminal weights below it).
RationalVector node_masses(const EventTree& tree, const Measure& measure);

/// E^Q[f | node]. Throws ZeroMassError when the node has zero mass.
Rational conditional_expectation(const EventTree& tree, const Measure& measure, const Claim& terminal_values,
                                 NodeId node);

/// E^Q[f | ·] at every node; zero-mass nodes are reported as absent.
std::vector<std::optional<Rational>> conditional_expectation_process(const EventTree& tree, const Measure& measure,
                                                                     const Claim& terminal_values);

/// One-step drift E^Q[X_child − X_node | node] of a node process, or absent at
/// zero-mass and terminal nodes.
std::optional<Rational> one_step_drift(const EventTree& tree, const RationalVector& mass,
                                       const RationalVector& process, NodeId node);

/// Martingale/supermartingale verdict for each asset under the measure.
MeasureVerdict classify_measure(const MarketModel& model, const Measure& measure);

/// Zero drift (martingale) or nonpositive drift (supermartingale) at every
/// positive-mass node.
bool is_martingale(const EventTree& tree, const Measure& measure, const ValueProcess& process);
bool is_supermartingale(const EventTree& tree, const Measure& measure, const ValueProcess& process);

enum class PolytopeKind {
  /// Shortable assets martingales, the others supermartingales.
  Supermartingale,
  /// Every asset a martingale.
  Martingale,
};

/// Closed polytope of absolutely continuous measures of the given kind, as LP
/// rows over the terminal weights (variables 0..leaf_count-1, nonnegative,
/// summing to one). Each internal node n and asset i contributes
///   sum_{leaf below n} q_leaf · (S^i(child of n towards leaf) − S^i(n))  {=, <=}  0.
lp::Builder measure_polytope(const MarketModel& model, PolytopeKind kind);

}  // namespace ssp
