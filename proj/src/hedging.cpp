#include "ssp/hedging.hpp"

#include <algorithm>
#include <numeric>

#include "ssp/errors.hpp"
#include "ssp/ftap.hpp"
#include "strategy_lp.hpp"

namespace ssp {

namespace {

void check_claim(const MarketModel& model, const Claim& claim) {
  if (claim.payoff.size() != model.tree().leaf_count()) {
    throw StructuralError("claim has " + std::to_string(claim.payoff.size()) + " payoffs for " +
                          std::to_string(model.tree().leaf_count()) + " terminal nodes");
  }
}

void require_pricing_preconditions(const MarketModel& model, const Claim& claim) {
  check_claim(model, claim);
  for (std::size_t k = 0; k < claim.payoff.size(); ++k) {
    if (claim.payoff[k] < 0) {
      throw NegativePayoffError("negative payoff at terminal node " + std::to_string(model.tree().leaves()[k]));
    }
  }
  if (!esmm_feasibility(model)) throw NoEsmmError("market admits arbitrage; superreplication price undefined");
}

Rational shift_for(const Claim& claim) {
  Rational lowest = 0;
  for (const auto& f : claim.payoff) lowest = f < lowest ? f : lowest;
  return -lowest;
}

Claim shifted(const Claim& claim, const Rational& by) {
  Claim out = claim;
  for (auto& f : out.payoff) f += by;
  return out;
}

}  // namespace

ExpectationOptimum maximize_expectation(const MarketModel& model, const Claim& payoff, PolytopeKind kind) {
  check_claim(model, payoff);
  const std::size_t leaves = model.tree().leaf_count();
  lp::Builder b = measure_polytope(model, kind);
  for (std::size_t k = 0; k < leaves; ++k) b.set_cost(k, payoff.payoff[k]);
  lp::LinearProgram program = b.build();
  lp::LpOutcome out = lp::solve(program);
  if (out.status != lp::Status::Optimal) throw DomainError("measure polytope is empty");

  ExpectationOptimum result{*out.objective_value, Measure{*out.primal_solution}, std::nullopt};

  std::vector<lp::Builder::Term> face;
  for (std::size_t k = 0; k < leaves; ++k) {
    if (payoff.payoff[k] != 0) face.emplace_back(k, payoff.payoff[k]);
  }
  b.add_row(face, lp::Relation::Equal, result.value);
  std::vector<std::size_t> strict(leaves);
  std::iota(strict.begin(), strict.end(), 0);
  if (auto point = lp::strict_interior_point(b.build(), strict)) {
    result.equivalent_optimizer = Measure{std::move(*point)};
  }
  return result;
}

HedgePrice superreplication_price(const MarketModel& model, const Claim& claim) {
  require_pricing_preconditions(model, claim);
  ExpectationOptimum opt = maximize_expectation(model, claim);
  HedgePrice price;
  price.value = opt.value;
  price.attained_by_equivalent = opt.equivalent_optimizer.has_value();
  price.witness_measure = price.attained_by_equivalent ? *opt.equivalent_optimizer : opt.vertex;
  return price;
}

namespace {

Superhedge solve_superhedge(const MarketModel& model, const Claim& claim, bool wealth_floor) {
  const auto& tree = model.tree();
  lp::Builder b;
  const std::size_t x = b.add_variable(lp::Bound::Free, Rational(-1));
  detail::StrategyVariables holdings(b, model);

  std::vector<std::size_t> consumption(tree.node_count(), 0);
  for (NodeId v : tree.bfs_order()) {
    if (v != tree.root()) consumption[v] = b.add_variable(lp::Bound::NonNegative);
  }
  for (NodeId v : tree.bfs_order()) {
    auto p = tree.parent(v);
    if (!p || *p == tree.root()) continue;
    b.add_row({{consumption[v], Rational(1)}, {consumption[*p], Rational(-1)}}, lp::Relation::GreaterEqual,
              Rational(0));
  }
  for (NodeId v : tree.bfs_order()) {
    auto terms = holdings.gains_terms(v);
    terms.emplace_back(x, Rational(1));
    if (v != tree.root()) terms.emplace_back(consumption[v], Rational(-1));
    if (tree.is_terminal(v)) {
      b.add_row(terms, lp::Relation::Equal, claim.payoff[tree.leaf_index(v)]);
    } else if (wealth_floor) {
      b.add_row(terms, lp::Relation::GreaterEqual, Rational(0));
    }
  }

  lp::LpOutcome out = lp::solve(b.build());
  if (out.status != lp::Status::Optimal) throw NoEsmmError("superhedging program has no optimum");
  const auto& sol = *out.primal_solution;

  Superhedge hedge;
  hedge.initial_capital = sol[x];
  hedge.strategy = holdings.extract(sol);
  hedge.consumption.cumulative.assign(tree.node_count(), Rational(0));
  for (NodeId v : tree.bfs_order()) {
    if (v != tree.root()) hedge.consumption.cumulative[v] = sol[consumption[v]];
  }
  if (wealth_floor) hedge.strategy.admissibility_bound = hedge.initial_capital;
  return hedge;
}

}  // namespace

Superhedge superhedge(const MarketModel& model, const Claim& claim) {
  require_pricing_preconditions(model, claim);
  return solve_superhedge(model, claim, /*wealth_floor=*/true);
}

HedgePrice superreplication_price_bounded_below(const MarketModel& model, const Claim& claim) {
  check_claim(model, claim);
  Rational alpha = shift_for(claim);
  HedgePrice price = superreplication_price(model, shifted(claim, alpha));
  price.value -= alpha;
  return price;
}

Superhedge superhedge_bounded_below(const MarketModel& model, const Claim& claim) {
  check_claim(model, claim);
  Rational alpha = shift_for(claim);
  Superhedge hedge = superhedge(model, shifted(claim, alpha));
  // The admissibility floor set by superhedge() refers to the shifted wealth
  // and stays valid: (H·S) >= −(x + α).
  hedge.initial_capital -= alpha;
  return hedge;
}

RationalVector hedge_residual(const MarketModel& model, const Claim& claim, const Superhedge& hedge) {
  check_claim(model, claim);
  const auto& tree = model.tree();
  ValueProcess gains = stochastic_integral(model, hedge.strategy);
  RationalVector residual;
  for (std::size_t k = 0; k < tree.leaf_count(); ++k) {
    NodeId leaf = tree.leaves()[k];
    residual.push_back(hedge.initial_capital + gains.value[leaf] - hedge.consumption.cumulative[leaf] -
                       claim.payoff[k]);
  }
  return residual;
}

Attainability is_attainable(const MarketModel& model, const Claim& claim) {
  HedgePrice price = superreplication_price_bounded_below(model, claim);
  Attainability result;
  result.price = price.value;
  result.evidence = *price.witness_measure;
  result.attainable = price.attained_by_equivalent;
  if (!result.attainable) return result;

  Superhedge hedge = superhedge_bounded_below(model, claim);
  const auto& tree = model.tree();
  bool no_consumption = std::all_of(hedge.consumption.cumulative.begin(), hedge.consumption.cumulative.end(),
                                    [](const Rational& c) { return c == 0; });
  ValueProcess gains = stochastic_integral(model, hedge.strategy);
  result.martingale_verified = no_consumption && hedge.initial_capital == price.value &&
                               is_martingale(tree, result.evidence, gains);
  result.strategy = std::move(hedge.strategy);
  return result;
}

ValueProcess price_process(const MarketModel& model, const Claim& claim) {
  require_pricing_preconditions(model, claim);
  const auto& tree = model.tree();
  ValueProcess value{RationalVector(tree.node_count())};
  for (NodeId leaf : tree.leaves()) value.value[leaf] = claim.payoff[tree.leaf_index(leaf)];

  auto order = tree.bfs_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    NodeId v = *it;
    if (tree.is_terminal(v)) continue;
    auto children = tree.children(v);
    lp::Builder b;
    std::vector<lp::Builder::Term> normalization;
    for (std::size_t j = 0; j < children.size(); ++j) {
      b.add_variable(lp::Bound::NonNegative, value.value[children[j]]);
      normalization.emplace_back(j, Rational(1));
    }
    b.add_row(normalization, lp::Relation::Equal, Rational(1));
    for (std::size_t i = 0; i < model.asset_count(); ++i) {
      std::vector<lp::Builder::Term> terms;
      for (std::size_t j = 0; j < children.size(); ++j) {
        Rational increment = model.price(children[j], i) - model.price(v, i);
        if (increment != 0) terms.emplace_back(j, std::move(increment));
      }
      if (terms.empty()) continue;
      b.add_row(terms, model.is_shortable(i) ? lp::Relation::Equal : lp::Relation::LessEqual, Rational(0));
    }
    lp::LpOutcome out = lp::solve(b.build());
    if (out.status != lp::Status::Optimal) {
      throw NoEsmmError("no one-step supermartingale measure at node " + std::to_string(v));
    }
    value.value[v] = *out.objective_value;
  }
  return value;
}

}  // namespace ssp
