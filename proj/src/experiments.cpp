#include "ssp/experiments.hpp"

#include <cmath>
#include <random>

#include "ssp/errors.hpp"
#include "ssp/ftap.hpp"
#include "ssp/hedging.hpp"
#include "ssp/lp.hpp"

namespace ssp::experiments {

double McEstimate::z_score() const {
  if (standard_error == 0.0) return estimate == closed_form ? 0.0 : INFINITY;
  return (estimate - closed_form) / standard_error;
}

double bs_tilted_closed_form(double s0, double mu, double sigma, double gamma, double maturity) {
  return std::exp((sigma * gamma - mu + sigma * sigma) * maturity) / s0;
}

McEstimate bs_tilted_expectation(const BsTiltParams& p) {
  if (!(p.sigma > 0)) throw DomainError("sigma must be positive");
  if (!(p.s0 > 0)) throw DomainError("S0 must be positive");
  if (!(p.maturity > 0)) throw DomainError("maturity must be positive");
  if (p.gamma < p.mu / p.sigma) throw DomainError("gamma must be at least mu/sigma for a supermartingale tilt");
  if (p.paths < 10000) throw DomainError("at least 10^4 paths are required");

  std::mt19937_64 rng(p.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double root_t = std::sqrt(p.maturity);
  const double drift = (p.mu - 0.5 * p.sigma * p.sigma) * p.maturity;
  const double tilt_comp = 0.5 * p.gamma * p.gamma * p.maturity;

  double sum = 0.0;
  double sum_sq = 0.0;
  const bool weighted = p.sampler == BsSampler::ImportanceWeights;
  for (std::size_t k = 0; k < p.paths; ++k) {
    double brownian = root_t * normal(rng);
    double weight = 1.0;
    if (weighted) {
      weight = std::exp(-p.gamma * brownian - tilt_comp);
    } else {
      brownian -= p.gamma * p.maturity;
    }
    const double terminal = p.s0 * std::exp(drift + p.sigma * brownian);
    const double sample = weight / terminal;
    sum += sample;
    sum_sq += sample * sample;
  }
  const double n = static_cast<double>(p.paths);
  const double mean = sum / n;
  const double variance = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));

  McEstimate est;
  est.estimate = mean;
  est.standard_error = std::sqrt(variance / n);
  est.closed_form = bs_tilted_closed_form(p.s0, p.mu, p.sigma, p.gamma, p.maturity);
  est.paths = p.paths;
  est.seed = p.seed;
  return est;
}

namespace {

// Recombining lattice for R with increments ±delta. V(k, j) with j up-moves.
// One-step LP: max p·V_up + (1 − p)·V_down, p in [floor, 1], supermartingale
// condition on S = E(R), which reduces to (2p − 1)·delta <= 0.
double constrained_lattice_price(int steps, const Rational& delta, const Rational& floor,
                                 const std::vector<Rational>& terminal) {
  std::vector<Rational> values = terminal;
  for (int k = steps - 1; k >= 0; --k) {
    std::vector<Rational> next(static_cast<std::size_t>(k) + 1);
    for (int j = 0; j <= k; ++j) {
      lp::Builder b;
      const std::size_t up = b.add_variable(lp::Bound::NonNegative, values[static_cast<std::size_t>(j) + 1]);
      const std::size_t dn = b.add_variable(lp::Bound::NonNegative, values[static_cast<std::size_t>(j)]);
      b.add_row({{up, Rational(1)}, {dn, Rational(1)}}, lp::Relation::Equal, Rational(1));
      b.add_row({{up, delta}, {dn, Rational(-delta)}}, lp::Relation::LessEqual, Rational(0));
      if (floor > 0) b.add_row({{up, Rational(1)}}, lp::Relation::GreaterEqual, floor);
      lp::LpOutcome out = lp::solve(b.build());
      if (out.status != lp::Status::Optimal) throw DomainError("empty tilted constraint family");
      next[static_cast<std::size_t>(j)] = *out.objective_value;
    }
    values = std::move(next);
  }
  return to_double(values.front());
}

}  // namespace

std::vector<StochexpRow> stochexp_alpha_curve(const StochexpParams& params, std::span<const double> alphas) {
  const double qv = params.quadratic_variation;
  if (!(qv > 0)) throw DomainError("[R,R]_T must be strictly positive");
  if (params.fine_steps < 1 || params.coarse_steps < 1) throw DomainError("lattice needs at least one step");

  const double fine_delta = std::sqrt(qv / params.fine_steps);
  const double coarse_delta_d = std::sqrt(qv / params.coarse_steps);
  if (coarse_delta_d >= 1.0) throw DomainError("coarse lattice increment must be below 1 to keep S positive");
  const Rational coarse_delta = rationalize(coarse_delta_d, 1000000);

  std::vector<Rational> terminal;
  for (int j = 0; j <= params.coarse_steps; ++j) {
    Rational r_terminal = coarse_delta * (2 * j - params.coarse_steps);
    terminal.push_back(rationalize(std::exp(-to_double(r_terminal)), 1000000000L));
  }

  std::vector<StochexpRow> rows;
  for (double alpha : alphas) {
    if (alpha < 0) throw DomainError("alpha must be nonnegative");
    StochexpRow row;
    row.alpha = alpha;
    row.closed_form = std::exp((0.5 + alpha) * qv);
    if (alpha * fine_delta <= 1.0) {
      const double q = 0.5 * (1.0 - alpha * fine_delta);
      const double one_step = q * std::exp(-fine_delta) + (1.0 - q) * std::exp(fine_delta);
      row.lattice_tilted = std::exp(params.fine_steps * std::log(one_step));
    }
    Rational floor = (1 - rationalize(alpha, 1000000) * coarse_delta) / 2;
    if (floor < 0) floor = 0;
    row.lp_price = constrained_lattice_price(params.coarse_steps, coarse_delta, floor, terminal);
    rows.push_back(row);
  }
  return rows;
}

std::pair<Rational, Rational> crr_factors(double sigma, double dt, long denominator) {
  if (!(sigma > 0) || !(dt > 0)) throw DomainError("CRR factors need sigma > 0 and dt > 0");
  Rational up = rationalize(std::exp(sigma * std::sqrt(dt)), denominator);
  if (up <= 1) throw DomainError("CRR up factor rounds to 1; use a finer denominator");
  return {up, 1 / up};
}

MarketModel binomial_model(int depth, const Rational& s0, const Rational& up, const Rational& down, bool shortable) {
  if (depth < 0) throw DomainError("depth must be nonnegative");
  if (s0 <= 0 || up <= 0 || down <= 0) throw DomainError("binomial parameters must be positive");
  std::vector<std::optional<NodeId>> parent{std::nullopt};
  RationalVector weight{Rational(1)};
  std::vector<RationalVector> prices{{s0}};
  std::vector<NodeId> frontier{0};
  for (int t = 0; t < depth; ++t) {
    std::vector<NodeId> next;
    for (NodeId v : frontier) {
      for (const Rational* factor : {&up, &down}) {
        parent.emplace_back(v);
        weight.emplace_back(1, 2);
        prices.push_back({prices[v][0] * *factor});
        next.push_back(parent.size() - 1);
      }
    }
    frontier = std::move(next);
  }
  return MarketModel(EventTree::from_parents(std::move(parent), std::move(weight)), std::move(prices),
                     shortable ? 1 : 0);
}

Claim lattice_claim(const MarketModel& model, LatticeKind kind, const LatticeParams& params) {
  const auto& tree = model.tree();
  const Rational& s0 = model.price(tree.root(), 0);
  Claim claim;
  for (NodeId leaf : tree.leaves()) {
    const Rational& s = model.price(leaf, 0);
    switch (kind) {
      case LatticeKind::Digital:
        claim.payoff.emplace_back(s <= s0 ? 1 : 0);
        break;
      case LatticeKind::Put:
        claim.payoff.push_back(params.strike > s ? Rational(params.strike - s) : Rational(0));
        break;
      case LatticeKind::Reciprocal:
        claim.payoff.push_back(1 / s);
        break;
    }
  }
  return claim;
}

std::vector<LatticeRow> lattice_family_study(LatticeKind kind, std::span<const int> depths,
                                             const LatticeParams& params) {
  if (!(params.down < 1)) throw DomainError("down factor must be below 1");
  if (!esmm_feasibility(binomial_model(1, params.s0, params.up, params.down))) {
    throw DomainError("binomial parameters admit arbitrage");
  }
  std::vector<LatticeRow> rows;
  for (int n : depths) {
    MarketModel model = binomial_model(n, params.s0, params.up, params.down);
    HedgePrice price = superreplication_price(model, lattice_claim(model, kind, params));
    LatticeRow row;
    row.depth = n;
    row.price = price.value;
    row.attained_by_equivalent = price.attained_by_equivalent;
    Rational down_n = 1;
    for (int k = 0; k < n; ++k) down_n *= params.down;
    switch (kind) {
      case LatticeKind::Digital:
        row.closed_form = 1;
        break;
      case LatticeKind::Put:
        row.closed_form = params.strike - down_n * params.s0;
        break;
      case LatticeKind::Reciprocal:
        row.closed_form = 1 / (params.s0 * down_n);
        break;
    }
    if (!rows.empty() && rows.back().price != 0) row.growth = to_double(row.price / rows.back().price);
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

std::string kind_name(LatticeKind kind) {
  switch (kind) {
    case LatticeKind::Digital:
      return "digital";
    case LatticeKind::Put:
      return "put";
    case LatticeKind::Reciprocal:
      return "reciprocal";
  }
  return "?";
}

}  // namespace

void write_bs_csv(std::ostream& out, std::span<const BsTiltParams> grid, std::span<const McEstimate> rows) {
  out << "# seed=" << (grid.empty() ? kDefaultSeed : grid.front().seed) << "\n";
  out << "s0,mu,sigma,gamma,maturity,paths,estimate,stderr,closed_form,z_score\n";
  out.precision(12);
  for (std::size_t k = 0; k < rows.size() && k < grid.size(); ++k) {
    const auto& g = grid[k];
    const auto& r = rows[k];
    out << g.s0 << ',' << g.mu << ',' << g.sigma << ',' << g.gamma << ',' << g.maturity << ',' << r.paths << ','
        << r.estimate << ',' << r.standard_error << ',' << r.closed_form << ',' << r.z_score() << "\n";
  }
}

void write_stochexp_csv(std::ostream& out, const StochexpParams& params, std::span<const StochexpRow> rows,
                        std::uint64_t seed) {
  out << "# seed=" << seed << " quadratic_variation=" << params.quadratic_variation
      << " fine_steps=" << params.fine_steps << " coarse_steps=" << params.coarse_steps << "\n";
  out << "alpha,closed_form,lattice_tilted,lp_price\n";
  out.precision(12);
  for (const auto& r : rows) {
    out << r.alpha << ',' << r.closed_form << ',';
    if (r.lattice_tilted) out << *r.lattice_tilted;
    out << ',' << r.lp_price << "\n";
  }
}

void write_lattice_csv(std::ostream& out, LatticeKind kind, std::span<const LatticeRow> rows, std::uint64_t seed) {
  out << "# seed=" << seed << " kind=" << kind_name(kind) << "\n";
  out << "depth,price,price_decimal,closed_form,matches_closed_form,attained_by_equivalent,growth\n";
  out.precision(12);
  for (const auto& r : rows) {
    out << r.depth << ',' << to_string(r.price) << ',' << to_double(r.price) << ',' << to_string(r.closed_form)
        << ',' << (r.price == r.closed_form ? "true" : "false") << ','
        << (r.attained_by_equivalent ? "true" : "false") << ',';
    if (r.growth) out << *r.growth;
    out << "\n";
  }
}

}  // namespace ssp::experiments
