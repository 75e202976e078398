#include "ssp/market.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "ssp/errors.hpp"

namespace ssp {

namespace {
constexpr std::size_t kNotLeaf = std::numeric_limits<std::size_t>::max();
}

EventTree EventTree::from_parents(std::vector<std::optional<NodeId>> parent,
                                  RationalVector branch_weight) {
  const std::size_t n = parent.size();
  if (n == 0) throw StructuralError("event tree needs at least one node");
  if (branch_weight.size() != n) throw StructuralError("branch weight count differs from node count");

  EventTree tree;
  tree.parent_ = std::move(parent);
  tree.weight_ = std::move(branch_weight);

  std::size_t roots = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!tree.parent_[i]) {
      tree.root_ = i;
      ++roots;
    } else if (*tree.parent_[i] >= n) {
      throw StructuralError("node " + std::to_string(i) + " has unknown parent " +
                            std::to_string(*tree.parent_[i]));
    } else if (*tree.parent_[i] == i) {
      throw StructuralError("node " + std::to_string(i) + " is its own parent");
    }
  }
  if (roots != 1) throw StructuralError("event tree must have exactly one root, found " + std::to_string(roots));
  tree.weight_[tree.root_] = 1;
  tree.index();
  return tree;
}

EventTree EventTree::single_node() { return from_parents({std::nullopt}, {Rational(1)}); }

void EventTree::index() {
  const std::size_t n = parent_.size();
  children_.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    if (parent_[i]) children_[*parent_[i]].push_back(i);
  }

  time_.assign(n, -1);
  order_.clear();
  std::deque<NodeId> queue{root_};
  time_[root_] = 0;
  while (!queue.empty()) {
    NodeId v = queue.front();
    queue.pop_front();
    order_.push_back(v);
    for (NodeId c : children_[v]) {
      time_[c] = time_[v] + 1;
      queue.push_back(c);
    }
  }
  if (order_.size() != n) throw StructuralError("event tree contains a cycle or disconnected nodes");

  leaves_.clear();
  internal_.clear();
  for (NodeId v : order_) {
    if (children_[v].empty()) {
      leaves_.push_back(v);
    } else {
      internal_.push_back(v);
    }
  }
  std::sort(leaves_.begin(), leaves_.end());
  horizon_ = time_[leaves_.front()];
  for (NodeId leaf : leaves_) {
    if (time_[leaf] != horizon_) {
      throw StructuralError("terminal node " + std::to_string(leaf) + " at time " +
                            std::to_string(time_[leaf]) + ", expected horizon " + std::to_string(horizon_));
    }
  }
  leaf_pos_.assign(n, kNotLeaf);
  for (std::size_t k = 0; k < leaves_.size(); ++k) leaf_pos_[leaves_[k]] = k;

  for (NodeId v : internal_) {
    Rational total = 0;
    for (NodeId c : children_[v]) {
      if (weight_[c] <= 0) {
        throw StructuralError("branch weight of node " + std::to_string(c) + " must be strictly positive");
      }
      total += weight_[c];
    }
    if (total != 1) {
      throw StructuralError("branch weights below node " + std::to_string(v) + " sum to " + to_string(total));
    }
  }

  below_.assign(n, {});
  for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
    NodeId v = *it;
    if (children_[v].empty()) {
      below_[v].push_back(leaf_pos_[v]);
    } else {
      for (NodeId c : children_[v]) below_[v].insert(below_[v].end(), below_[c].begin(), below_[c].end());
      std::sort(below_[v].begin(), below_[v].end());
    }
  }
}

std::size_t EventTree::leaf_index(NodeId n) const {
  if (leaf_pos_.at(n) == kNotLeaf) throw StructuralError("node " + std::to_string(n) + " is not terminal");
  return leaf_pos_[n];
}

NodeId EventTree::child_towards(NodeId ancestor, NodeId descendant) const {
  NodeId v = descendant;
  while (parent_.at(v)) {
    if (*parent_[v] == ancestor) return v;
    v = *parent_[v];
  }
  throw StructuralError("node " + std::to_string(descendant) + " is not below " + std::to_string(ancestor));
}

RationalVector EventTree::reference_leaf_weights() const {
  RationalVector mass(node_count());
  for (NodeId v : order_) mass[v] = parent_[v] ? mass[*parent_[v]] * weight_[v] : Rational(1);
  RationalVector out;
  out.reserve(leaves_.size());
  for (NodeId leaf : leaves_) out.push_back(mass[leaf]);
  return out;
}

// ---------------------------------------------------------------------------

MarketModel::MarketModel(EventTree tree, std::vector<RationalVector> prices, std::size_t shortable_count)
    : tree_(std::move(tree)), prices_(std::move(prices)), shortable_(shortable_count) {
  if (prices_.size() != tree_.node_count()) {
    throw StructuralError("price table has " + std::to_string(prices_.size()) + " rows for " +
                          std::to_string(tree_.node_count()) + " nodes");
  }
  asset_count_ = prices_.front().size();
  for (std::size_t v = 0; v < prices_.size(); ++v) {
    if (prices_[v].size() != asset_count_) {
      throw StructuralError("node " + std::to_string(v) + " has " + std::to_string(prices_[v].size()) +
                            " prices, expected " + std::to_string(asset_count_));
    }
    for (const auto& p : prices_[v]) {
      if (p < 0) throw DomainError("negative price at node " + std::to_string(v));
    }
  }
  if (shortable_ > asset_count_) throw StructuralError("shortable_count exceeds asset count");
}

MarketModel MarketModel::with_shortable_count(std::size_t d) const { return MarketModel(tree_, prices_, d); }

Strategy Strategy::zero(const EventTree& tree, std::size_t assets) {
  return constant(tree, RationalVector(assets));
}

Strategy Strategy::constant(const EventTree& tree, RationalVector position) {
  Strategy s;
  s.holdings.assign(tree.node_count(), {});
  for (NodeId v : tree.internal_nodes()) s.holdings[v] = position;
  return s;
}

void check_holdings(const MarketModel& model, const Strategy& strategy) {
  const auto& tree = model.tree();
  if (strategy.holdings.size() != tree.node_count()) {
    throw StructuralError("strategy covers " + std::to_string(strategy.holdings.size()) + " nodes, tree has " +
                          std::to_string(tree.node_count()));
  }
  for (NodeId v : tree.internal_nodes()) {
    if (strategy.holdings[v].size() != model.asset_count()) {
      throw StructuralError("missing holdings at node " + std::to_string(v));
    }
  }
}

ValueProcess stochastic_integral(const MarketModel& model, const Strategy& strategy) {
  check_holdings(model, strategy);
  const auto& tree = model.tree();
  ValueProcess out{RationalVector(tree.node_count())};
  for (NodeId v : tree.bfs_order()) {
    auto p = tree.parent(v);
    if (!p) continue;
    Rational gain = out.value[*p];
    const auto& h = strategy.holdings[*p];
    for (std::size_t i = 0; i < model.asset_count(); ++i) {
      if (h[i] != 0) gain += h[i] * (model.price(v, i) - model.price(*p, i));
    }
    out.value[v] = std::move(gain);
  }
  return out;
}

AdmissibilityReport is_admissible(const MarketModel& model, const Strategy& strategy) {
  check_holdings(model, strategy);
  const auto& tree = model.tree();
  AdmissibilityReport report;

  for (NodeId v : tree.bfs_order()) {
    if (tree.is_terminal(v)) continue;
    for (std::size_t i = model.shortable_count(); i < model.asset_count(); ++i) {
      if (strategy.holdings[v][i] < 0) {
        report.admissible = false;
        report.node = v;
        report.diagnosis = "short position in non-shortable asset " + std::to_string(i) + " at node " +
                           std::to_string(v);
        break;
      }
    }
    if (!report.admissible) break;
  }

  ValueProcess value = stochastic_integral(model, strategy);
  NodeId floor_node = tree.root();
  report.value_floor = 0;
  for (NodeId v : tree.bfs_order()) {
    if (value.value[v] < report.value_floor) {
      report.value_floor = value.value[v];
      floor_node = v;
    }
  }
  if (strategy.admissibility_bound) {
    report.bound = *strategy.admissibility_bound;
    if (report.admissible && report.value_floor < -report.bound) {
      report.admissible = false;
      report.node = floor_node;
      report.diagnosis = "value " + to_string(report.value_floor) + " at node " + std::to_string(floor_node) +
                         " is below the floor -" + to_string(report.bound);
    }
  } else {
    report.bound = -report.value_floor;
  }
  if (report.admissible) {
    report.diagnosis = "admissible with value floor " + to_string(report.value_floor);
  }
  return report;
}

ValueProcess cash_balance(const MarketModel& model, const Strategy& strategy) {
  ValueProcess gains = stochastic_integral(model, strategy);
  const auto& tree = model.tree();
  ValueProcess cash{RationalVector(tree.node_count())};
  for (NodeId v : tree.bfs_order()) {
    NodeId holder = tree.is_terminal(v) && tree.parent(v) ? *tree.parent(v) : v;
    if (tree.is_terminal(holder)) {
      cash.value[v] = gains.value[v];  // single-node tree: nothing is ever held
      continue;
    }
    cash.value[v] = gains.value[v] - dot(strategy.holdings[holder], model.price(v));
  }
  return cash;
}

Claim terminal_values(const EventTree& tree, const ValueProcess& process) {
  if (process.value.size() != tree.node_count()) throw StructuralError("process length differs from node count");
  Claim out;
  out.payoff.reserve(tree.leaf_count());
  for (NodeId leaf : tree.leaves()) out.payoff.push_back(process.value[leaf]);
  return out;
}

}  // namespace ssp
