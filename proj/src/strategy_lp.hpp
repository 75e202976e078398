#pragma once

// LP variables for predictable holdings, shared by the modules that search
// over strategies.

#include <optional>
#include <vector>

#include "ssp/lp.hpp"
#include "ssp/market.hpp"

namespace ssp::detail {

class StrategyVariables {
 public:
  /// One variable per (non-terminal node, asset): free for shortable assets,
  /// nonnegative otherwise. With a box, every holding is also kept in
  /// [-box, box] (or [0, box]).
  StrategyVariables(lp::Builder& builder, const MarketModel& model, std::optional<Rational> box = std::nullopt)
      : model_(model), index_(model.tree().node_count()) {
    for (NodeId v : model.tree().internal_nodes()) {
      for (std::size_t i = 0; i < model.asset_count(); ++i) {
        bool shortable = model.is_shortable(i);
        std::size_t var = builder.add_variable(shortable ? lp::Bound::Free : lp::Bound::NonNegative);
        index_[v].push_back(var);
        if (box) builder.add_box(var, shortable ? Rational(-*box) : Rational(0), *box);
      }
    }
  }

  std::size_t var(NodeId node, std::size_t asset) const { return index_.at(node).at(asset); }

  /// Linear form of (H·S) at the node.
  std::vector<lp::Builder::Term> gains_terms(NodeId node) const {
    std::vector<lp::Builder::Term> terms;
    const auto& tree = model_.tree();
    NodeId v = node;
    while (auto p = tree.parent(v)) {
      for (std::size_t i = 0; i < model_.asset_count(); ++i) {
        Rational increment = model_.price(v, i) - model_.price(*p, i);
        if (increment != 0) terms.emplace_back(var(*p, i), std::move(increment));
      }
      v = *p;
    }
    return terms;
  }

  Strategy extract(const RationalVector& x) const {
    Strategy s;
    s.holdings.assign(model_.tree().node_count(), {});
    for (NodeId v : model_.tree().internal_nodes()) {
      for (std::size_t var_index : index_[v]) s.holdings[v].push_back(x.at(var_index));
    }
    return s;
  }

 private:
  const MarketModel& model_;
  std::vector<std::vector<std::size_t>> index_;
};

}  // namespace ssp::detail
