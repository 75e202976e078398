#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ssp/rational.hpp"

namespace ssp {

using NodeId = std::size_t;

/// Finite filtered probability structure: a rooted tree whose depth is the
/// trading date. Branch weights are conditional probabilities of the
/// reference measure given the parent.
class EventTree {
 public:
  /// Validates a parent-link description. `branch_weight[root]` is ignored.
  static EventTree from_parents(std::vector<std::optional<NodeId>> parent,
                                RationalVector branch_weight);
  /// One-node tree, horizon 0.
  static EventTree single_node();

  std::size_t node_count() const { return parent_.size(); }
  NodeId root() const { return root_; }
  std::optional<NodeId> parent(NodeId n) const { return parent_.at(n); }
  int time_of(NodeId n) const { return time_.at(n); }
  int horizon() const { return horizon_; }
  const Rational& branch_weight(NodeId n) const { return weight_.at(n); }
  std::span<const NodeId> children(NodeId n) const { return children_.at(n); }
  bool is_terminal(NodeId n) const { return children_.at(n).empty(); }

  /// Terminal nodes in increasing id order. Claims and measures are indexed
  /// by position in this list.
  std::span<const NodeId> leaves() const { return leaves_; }
  std::size_t leaf_count() const { return leaves_.size(); }
  /// Position of a terminal node in leaves().
  std::size_t leaf_index(NodeId n) const;

  /// Non-terminal nodes in breadth-first order.
  std::span<const NodeId> internal_nodes() const { return internal_; }
  /// All nodes in breadth-first order (parents before children).
  std::span<const NodeId> bfs_order() const { return order_; }
  /// Leaf indices of the terminal descendants of n.
  std::span<const std::size_t> leaves_below(NodeId n) const { return below_.at(n); }
  /// Child of `ancestor` on the path towards `descendant`.
  NodeId child_towards(NodeId ancestor, NodeId descendant) const;

  /// Reference-measure probability of every leaf.
  RationalVector reference_leaf_weights() const;

 private:
  EventTree() = default;
  void index();

  NodeId root_ = 0;
  int horizon_ = 0;
  std::vector<std::optional<NodeId>> parent_;
  RationalVector weight_;
  std::vector<int> time_;
  std::vector<std::vector<NodeId>> children_;
  std::vector<NodeId> leaves_;
  std::vector<std::size_t> leaf_pos_;
  std::vector<NodeId> internal_;
  std::vector<NodeId> order_;
  std::vector<std::vector<std::size_t>> below_;
};

/// Nonnegative prices of N assets on every node. The first `shortable_count`
/// assets may be sold short; the rest may not.
class MarketModel {
 public:
  MarketModel(EventTree tree, std::vector<RationalVector> prices, std::size_t shortable_count);

  const EventTree& tree() const { return tree_; }
  std::size_t asset_count() const { return asset_count_; }
  std::size_t shortable_count() const { return shortable_; }
  bool is_shortable(std::size_t asset) const { return asset < shortable_; }
  std::span<const Rational> price(NodeId n) const { return prices_.at(n); }
  const Rational& price(NodeId n, std::size_t asset) const { return prices_.at(n).at(asset); }
  const std::vector<RationalVector>& prices() const { return prices_; }

  /// Same tree and prices with a different short-sale partition.
  MarketModel with_shortable_count(std::size_t d) const;

 private:
  EventTree tree_;
  std::vector<RationalVector> prices_;
  std::size_t asset_count_ = 0;
  std::size_t shortable_ = 0;
};

/// Predictable holdings: `holdings[n]` is the position carried from node n
/// over the following period. Terminal entries are ignored and may be empty.
struct Strategy {
  std::vector<RationalVector> holdings;
  std::optional<Rational> admissibility_bound;

  static Strategy zero(const EventTree& tree, std::size_t assets);
  /// The same position at every non-terminal node.
  static Strategy constant(const EventTree& tree, RationalVector position);
};

/// One value per node.
struct ValueProcess {
  RationalVector value;
};

/// Terminal payoff, indexed like EventTree::leaves().
struct Claim {
  RationalVector payoff;
};

/// (H·S): at node n, the sum over the root-to-n path of H_parent·(S_child − S_parent).
ValueProcess stochastic_integral(const MarketModel& model, const Strategy& strategy);

struct AdmissibilityReport {
  bool admissible = true;
  /// Minimum of (H·S) over all nodes.
  Rational value_floor;
  /// Declared α, or −value_floor when none was declared.
  Rational bound;
  std::string diagnosis;
  std::optional<NodeId> node;
};

/// Short-sale prohibition on assets past shortable_count and the value floor
/// (H·S) >= −α.
AdmissibilityReport is_admissible(const MarketModel& model, const Strategy& strategy);

/// Money-market balance H^0 = (H·S) − H·S, using the position held after
/// trading at each node (the incoming position at terminal nodes).
ValueProcess cash_balance(const MarketModel& model, const Strategy& strategy);

/// Restriction of a node process to the terminal nodes.
Claim terminal_values(const EventTree& tree, const ValueProcess& process);

/// Throws StructuralError if a non-terminal node lacks an N-vector of holdings.
void check_holdings(const MarketModel& model, const Strategy& strategy);

}  // namespace ssp
