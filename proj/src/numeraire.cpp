#include "ssp/numeraire.hpp"

#include "ssp/errors.hpp"
#include "strategy_lp.hpp"

namespace ssp {

void NumeraireProcess::validate(const EventTree& tree) const {
  if (value.size() != tree.node_count()) throw StructuralError("numeraire length differs from node count");
  for (NodeId v = 0; v < value.size(); ++v) {
    if (value[v] <= 0) throw NonpositiveNumeraireError("numeraire not strictly positive at node " + std::to_string(v));
  }
}

MarketModel change_numeraire(const MarketModel& model, const NumeraireProcess& numeraire) {
  numeraire.validate(model.tree());
  std::vector<RationalVector> prices(model.tree().node_count());
  for (NodeId v = 0; v < prices.size(); ++v) {
    const Rational inv = 1 / numeraire.value[v];
    prices[v].push_back(inv);
    for (const auto& p : model.price(v)) prices[v].push_back(p * inv);
  }
  return MarketModel(model.tree(), std::move(prices), model.shortable_count() + 1);
}

namespace {

// Checks H·X = H_in X − H_0 X_0 node by node for a price table X.
std::vector<bool> identity_per_node(const EventTree& tree, const Strategy& strategy,
                                    const std::vector<RationalVector>& x) {
  std::vector<bool> ok(tree.node_count(), true);
  RationalVector integral(tree.node_count());
  const NodeId root = tree.root();
  const Rational initial = dot(strategy.holdings[root], x[root]);
  for (NodeId v : tree.bfs_order()) {
    auto p = tree.parent(v);
    if (p) {
      RationalVector increment(x[v].size());
      for (std::size_t i = 0; i < increment.size(); ++i) increment[i] = x[v][i] - x[*p][i];
      integral[v] = integral[*p] + dot(strategy.holdings[*p], increment);
    }
    const RationalVector& carried = p ? strategy.holdings[*p] : strategy.holdings[root];
    ok[v] = integral[v] == dot(carried, x[v]) - initial;
  }
  return ok;
}

}  // namespace

TransportCheck self_financing_transport(const MarketModel& model, const NumeraireProcess& numeraire,
                                        const Strategy& strategy) {
  const auto& tree = model.tree();
  numeraire.validate(tree);
  const std::size_t width = model.asset_count() + 2;
  if (tree.is_terminal(tree.root())) throw StructuralError("transport check needs at least one period");
  if (strategy.holdings.size() != tree.node_count()) throw StructuralError("strategy length differs from node count");
  for (NodeId v : tree.internal_nodes()) {
    if (strategy.holdings[v].size() != width) {
      throw StructuralError("transport strategy needs " + std::to_string(width) + " components at node " +
                            std::to_string(v));
    }
  }

  std::vector<RationalVector> deflated(tree.node_count()), original(tree.node_count());
  for (NodeId v = 0; v < tree.node_count(); ++v) {
    const Rational& value = numeraire.value[v];
    for (const auto& p : model.price(v)) {
      deflated[v].push_back(p / value);
      original[v].push_back(p);
    }
    deflated[v].push_back(1 / value);
    deflated[v].push_back(1);
    original[v].push_back(1);
    original[v].push_back(value);
  }

  TransportCheck check;
  check.deflated_per_node = identity_per_node(tree, strategy, deflated);
  check.original_per_node = identity_per_node(tree, strategy, original);
  auto all = [](const std::vector<bool>& flags) {
    for (bool f : flags) {
      if (!f) return false;
    }
    return true;
  };
  check.deflated_identity = all(check.deflated_per_node);
  check.original_identity = all(check.original_per_node);
  return check;
}

NumeraireNaCheck na_after_numeraire_check(const MarketModel& model, const NumeraireProcess& numeraire,
                                          const Rational& scale) {
  const auto& tree = model.tree();
  numeraire.validate(tree);
  if (scale <= 0) throw DomainError("box scale must be positive");

  NumeraireNaCheck check;
  check.arbitrage = find_arbitrage(change_numeraire(model, numeraire));
  check.na = !check.arbitrage.has_value();

  // Market (V, S): V-holdings free, S keeps its partition.
  std::vector<RationalVector> prices(tree.node_count());
  Rational range = 1;
  for (NodeId v = 0; v < tree.node_count(); ++v) {
    prices[v].push_back(numeraire.value[v]);
    for (const auto& p : model.price(v)) prices[v].push_back(p);
    range = numeraire.value[v] > range ? numeraire.value[v] : range;
  }
  MarketModel traded(tree, std::move(prices), model.shortable_count() + 1);
  check.holdings_box = scale;
  check.floor_box = scale * range;

  lp::Builder b;
  detail::StrategyVariables k(b, traded, check.holdings_box);
  const std::size_t alpha = b.add_variable(lp::Bound::NonNegative);
  b.add_box(alpha, Rational(0), check.floor_box);
  RationalVector objective(b.variable_count());
  for (NodeId v : tree.bfs_order()) {
    if (v == tree.root()) continue;
    auto terms = k.gains_terms(v);
    if (tree.is_terminal(v)) {
      for (const auto& [var, coeff] : terms) objective[var] += coeff;
      b.add_row(terms, lp::Relation::GreaterEqual, Rational(0));
    }
    terms.emplace_back(alpha, numeraire.value[v]);
    b.add_row(terms, lp::Relation::GreaterEqual, Rational(0));
  }
  for (std::size_t var = 0; var < objective.size(); ++var) {
    if (objective[var] != 0) b.set_cost(var, objective[var]);
  }
  lp::LpOutcome out = lp::solve(b.build());
  if (out.status != lp::Status::Optimal) throw DomainError("D-dominance program has no optimum");
  check.maximal = *out.objective_value == 0;
  if (!check.maximal) check.dominator = k.extract(*out.primal_solution);
  check.agree = check.na == check.maximal;
  return check;
}

}  // namespace ssp
