#include "ssp/maximality.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "ssp/errors.hpp"
#include "ssp/ftap.hpp"
#include "strategy_lp.hpp"

namespace ssp {

namespace {

void check_claim(const MarketModel& model, const Claim& claim) {
  if (claim.payoff.size() != model.tree().leaf_count()) {
    throw StructuralError("claim length differs from terminal node count");
  }
}

void require_esmm(const MarketModel& model) {
  if (!esmm_feasibility(model)) throw NoEsmmError("market admits arbitrage");
}

// Unique solution of a (possibly overdetermined) system with full column
// rank, by exact Gauss-Jordan elimination.
std::optional<RationalVector> unique_solution(std::vector<RationalVector> a, RationalVector b) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a.front().size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && a[pivot][c] == 0) ++pivot;
    if (pivot == rows) return std::nullopt;  // rank deficient
    std::swap(a[pivot], a[r]);
    std::swap(b[pivot], b[r]);
    Rational inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    b[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (std::size_t k = 0; k < cols; ++k) a[i][k] -= f * a[r][k];
      b[i] -= f * b[r];
    }
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i) {
    if (b[i] != 0) return std::nullopt;  // inconsistent
  }
  return RationalVector(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(cols));
}

// Vertices of {p >= 0, sum p = 1, sum_j p_j (S^i(child_j) − S^i(node)) = 0}.
std::vector<RationalVector> one_step_martingale_vertices(const MarketModel& model, NodeId node) {
  auto children = model.tree().children(node);
  const std::size_t k = children.size();
  if (k > 20) throw DomainError("too many children for one-step vertex enumeration");
  std::vector<RationalVector> out;
  for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
    std::vector<std::size_t> support;
    for (std::size_t j = 0; j < k; ++j) {
      if (mask & (1u << j)) support.push_back(j);
    }
    std::vector<RationalVector> a;
    RationalVector b;
    a.emplace_back(support.size(), Rational(1));
    b.push_back(1);
    for (std::size_t i = 0; i < model.asset_count(); ++i) {
      RationalVector row;
      for (std::size_t j : support) row.push_back(model.price(children[j], i) - model.price(node, i));
      a.push_back(std::move(row));
      b.push_back(0);
    }
    auto sol = unique_solution(std::move(a), std::move(b));
    if (!sol) continue;
    if (std::any_of(sol->begin(), sol->end(), [](const Rational& x) { return x <= 0; })) continue;
    RationalVector p(k);
    for (std::size_t s = 0; s < support.size(); ++s) p[support[s]] = (*sol)[s];
    out.push_back(std::move(p));
  }
  return out;
}

using SparseMeasure = std::map<std::size_t, Rational>;  // leaf index -> weight

}  // namespace

std::optional<Strategy> replicate_from_zero(const MarketModel& model, const Claim& claim) {
  check_claim(model, claim);
  const auto& tree = model.tree();
  lp::Builder b;
  detail::StrategyVariables holdings(b, model);
  for (NodeId leaf : tree.leaves()) {
    b.add_row(holdings.gains_terms(leaf), lp::Relation::Equal, claim.payoff[tree.leaf_index(leaf)]);
  }
  lp::LpOutcome out = lp::solve(b.build());
  if (out.status == lp::Status::Infeasible) return std::nullopt;
  return holdings.extract(*out.primal_solution);
}

MarketModel auxiliary_market(const MarketModel& model, const Strategy& strategy) {
  ValueProcess gains = stochastic_integral(model, strategy);
  Rational shift = 0;
  for (const auto& g : gains.value) shift = -g > shift ? Rational(-g) : shift;
  std::vector<RationalVector> prices(model.tree().node_count());
  for (NodeId v = 0; v < prices.size(); ++v) {
    prices[v].push_back(gains.value[v] + shift);
    for (const auto& p : model.price(v)) prices[v].push_back(p);
  }
  return MarketModel(model.tree(), std::move(prices), model.shortable_count() + 1);
}

BMaximality maximality_in_B(const MarketModel& model, const Strategy& strategy, const Rational& scale) {
  AdmissibilityReport adm = is_admissible(model, strategy);
  if (!adm.admissible) throw InadmissibleStrategyError(adm.diagnosis);
  if (scale <= 0) throw DomainError("box scale must be positive");

  MarketModel aux = auxiliary_market(model, strategy);
  const auto& tree = aux.tree();
  BMaximality result;
  result.holdings_box = scale;
  Rational price_range = 1;
  for (NodeId v = 0; v < tree.node_count(); ++v) {
    for (const auto& p : aux.price(v)) price_range = p > price_range ? p : price_range;
  }
  result.floor_box = scale * price_range;

  lp::Builder b;
  detail::StrategyVariables k(b, aux, result.holdings_box);
  const std::size_t alpha = b.add_variable(lp::Bound::NonNegative);
  const std::size_t beta = b.add_variable(lp::Bound::NonNegative);
  b.add_box(alpha, Rational(0), result.floor_box);
  b.add_box(beta, Rational(0), result.floor_box);

  RationalVector objective(b.variable_count());
  for (NodeId v : tree.bfs_order()) {
    if (v == tree.root()) continue;
    auto terms = k.gains_terms(v);
    if (tree.is_terminal(v)) {
      for (const auto& [var, coeff] : terms) objective[var] += coeff;
      b.add_row(terms, lp::Relation::GreaterEqual, Rational(0));
    }
    terms.emplace_back(beta, Rational(1));
    if (aux.price(v, 0) != 0) terms.emplace_back(alpha, aux.price(v, 0));
    b.add_row(terms, lp::Relation::GreaterEqual, Rational(0));
  }
  for (std::size_t var = 0; var < objective.size(); ++var) {
    if (objective[var] != 0) b.set_cost(var, objective[var]);
  }
  lp::LpOutcome out = lp::solve(b.build());
  if (out.status != lp::Status::Optimal) throw DomainError("B-dominance program has no optimum");
  if (*out.objective_value > 0) {
    result.maximal = false;
    result.dominator = k.extract(*out.primal_solution);
  }
  return result;
}

KMaximality is_maximal_in_K(const MarketModel& model, const Claim& claim) {
  check_claim(model, claim);
  require_esmm(model);
  const auto& tree = model.tree();
  lp::Builder b;
  detail::StrategyVariables k(b, model);
  RationalVector objective(b.variable_count());
  for (NodeId leaf : tree.leaves()) {
    auto terms = k.gains_terms(leaf);
    for (const auto& [var, coeff] : terms) objective[var] += coeff;
    b.add_row(terms, lp::Relation::GreaterEqual, claim.payoff[tree.leaf_index(leaf)]);
  }
  for (std::size_t var = 0; var < objective.size(); ++var) b.set_cost(var, objective[var]);

  lp::LpOutcome out = lp::solve(b.build());
  KMaximality result;
  if (out.status == lp::Status::Infeasible) return result;
  if (out.status == lp::Status::Unbounded) throw DomainError("K-dominance program unbounded despite an ESMM");
  Rational total_payoff = std::accumulate(claim.payoff.begin(), claim.payoff.end(), Rational(0));
  Rational excess = *out.objective_value - total_payoff;
  if (excess > 0) {
    result.maximal = false;
    result.dominator = k.extract(*out.primal_solution);
  } else {
    result.in_K = true;
  }
  return result;
}

std::vector<Measure> elmm_vertices(const MarketModel& model, std::size_t limit) {
  const auto& tree = model.tree();
  std::vector<std::vector<SparseMeasure>> at(tree.node_count());
  auto order = tree.bfs_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    NodeId v = *it;
    if (tree.is_terminal(v)) {
      at[v].push_back({{tree.leaf_index(v), Rational(1)}});
      continue;
    }
    auto children = tree.children(v);
    for (const auto& p : one_step_martingale_vertices(model, v)) {
      std::vector<SparseMeasure> partial{SparseMeasure{}};
      for (std::size_t j = 0; j < children.size() && !partial.empty(); ++j) {
        if (p[j] == 0) continue;
        std::vector<SparseMeasure> next;
        for (const auto& prefix : partial) {
          for (const auto& sub : at[children[j]]) {
            SparseMeasure combined = prefix;
            for (const auto& [leaf, w] : sub) combined[leaf] += p[j] * w;
            next.push_back(std::move(combined));
            if (next.size() > limit) throw DomainError("vertex enumeration exceeded its limit");
          }
        }
        partial = std::move(next);
      }
      for (auto& m : partial) at[v].push_back(std::move(m));
      if (at[v].size() > limit) throw DomainError("vertex enumeration exceeded its limit");
    }
    for (NodeId c : children) {
      at[c].clear();
      at[c].shrink_to_fit();
    }
  }

  std::set<std::vector<std::pair<std::size_t, Rational>>> seen;
  std::vector<Measure> out;
  for (const auto& m : at[tree.root()]) {
    std::vector<std::pair<std::size_t, Rational>> key(m.begin(), m.end());
    if (!seen.insert(key).second) continue;
    Measure q{RationalVector(tree.leaf_count())};
    for (const auto& [leaf, w] : m) q.terminal_weight[leaf] = w;
    out.push_back(std::move(q));
  }
  return out;
}

MaximalityReport classify_maximal(const MarketModel& model, const Claim& claim) {
  check_claim(model, claim);
  require_esmm(model);
  const auto& tree = model.tree();
  const std::size_t leaves = tree.leaf_count();
  MaximalityReport report;

  // (ii)
  ExpectationOptimum opt = maximize_expectation(model, claim, PolytopeKind::Supermartingale);
  report.sup_attained.max_expectation = opt.value;
  report.sup_attained.vertex = opt.vertex;
  if (opt.value == 0 && opt.equivalent_optimizer) {
    report.sup_attained.holds = true;
    report.sup_attained.r_star = opt.equivalent_optimizer;
  }

  // (iii)
  auto& mr = report.martingale_replication;
  mr.strategy = replicate_from_zero(model, claim);
  mr.replicable = mr.strategy.has_value();
  if (mr.replicable) {
    lp::Builder face = measure_polytope(model, PolytopeKind::Supermartingale);
    std::vector<lp::Builder::Term> expectation;
    for (std::size_t k = 0; k < leaves; ++k) {
      if (claim.payoff[k] != 0) expectation.emplace_back(k, claim.payoff[k]);
    }
    face.add_row(expectation, lp::Relation::Equal, Rational(0));
    std::vector<std::size_t> strict(leaves);
    std::iota(strict.begin(), strict.end(), 0);
    if (auto point = lp::strict_interior_point(face.build(), strict)) {
      Measure r{std::move(*point)};
      ValueProcess gains = stochastic_integral(model, *mr.strategy);
      if (is_martingale(tree, r, gains)) {
        mr.holds = true;
        mr.r_star = std::move(r);
      }
    }
  }

  if (report.sup_attained.holds && mr.holds) {
    ValueProcess gains = stochastic_integral(model, *mr.strategy);
    report.same_witness = is_martingale(tree, *report.sup_attained.r_star, gains);
  }

  // (iv)
  auto& iv = report.all_elmm_martingale;
  {
    lp::LinearProgram elmm = measure_polytope(model, PolytopeKind::Martingale).build();
    std::vector<std::size_t> strict(leaves);
    std::iota(strict.begin(), strict.end(), 0);
    iv.applicable = lp::strict_interior_point(elmm, strict).has_value();
  }
  if (iv.applicable) {
    iv.holds = mr.replicable;
    std::optional<ValueProcess> gains;
    if (mr.replicable) gains = stochastic_integral(model, *mr.strategy);
    for (auto& vertex : elmm_vertices(model)) {
      ++iv.vertices_checked;
      Rational expectation = dot(vertex.terminal_weight, claim.payoff);
      bool ok = expectation == 0 && (!gains || is_martingale(tree, vertex, *gains));
      if (!ok) {
        iv.holds = false;
        if (!iv.counterexample) iv.counterexample = std::move(vertex);
      }
    }
  }

  // (i)
  auto& aux = report.auxiliary_maximal;
  if (mr.replicable) {
    aux.evaluated = true;
    aux.auxiliary_nflvr = esmm_feasibility(auxiliary_market(model, *mr.strategy)).has_value();
    aux.maximal_in_B = maximality_in_B(model, *mr.strategy).maximal;
    aux.holds = aux.auxiliary_nflvr && aux.maximal_in_B;
  }
  return report;
}

}  // namespace ssp
