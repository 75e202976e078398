#include "ssp/ftap.hpp"

#include <numeric>

#include "strategy_lp.hpp"

namespace ssp {

std::optional<Measure> esmm_feasibility(const MarketModel& model) {
  lp::LinearProgram polytope = measure_polytope(model, PolytopeKind::Supermartingale).build();
  std::vector<std::size_t> strict(model.tree().leaf_count());
  std::iota(strict.begin(), strict.end(), 0);
  auto point = lp::strict_interior_point(polytope, strict);
  if (!point) return std::nullopt;
  return Measure{std::move(*point)};
}

std::optional<Arbitrage> find_arbitrage(const MarketModel& model) {
  const auto& tree = model.tree();
  if (tree.internal_nodes().empty()) return std::nullopt;

  lp::Builder b;
  detail::StrategyVariables holdings(b, model, Rational(1));
  RationalVector objective(b.variable_count());
  for (NodeId leaf : tree.leaves()) {
    auto terms = holdings.gains_terms(leaf);
    for (const auto& [var, coeff] : terms) objective[var] += coeff;
    b.add_row(terms, lp::Relation::GreaterEqual, Rational(0));
  }
  for (std::size_t var = 0; var < objective.size(); ++var) b.set_cost(var, objective[var]);

  lp::LpOutcome out = lp::solve(b.build());
  if (out.status != lp::Status::Optimal || *out.objective_value <= 0) return std::nullopt;

  Arbitrage arb{holdings.extract(*out.primal_solution), {}};
  ValueProcess gains = stochastic_integral(model, arb.strategy);
  arb.payoff = terminal_values(tree, gains);
  Rational floor = 0;
  for (const auto& g : gains.value) floor = g < floor ? g : floor;
  arb.strategy.admissibility_bound = -floor;
  return arb;
}

FtapReport check_arbitrage(const MarketModel& model) {
  FtapReport report;
  report.measure = esmm_feasibility(model);
  report.nflvr = report.measure.has_value();
  if (!report.nflvr) report.arbitrage = find_arbitrage(model);
  return report;
}

}  // namespace ssp
