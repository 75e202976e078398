// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "ssp/errors.hpp"
#include "ssp/experiments.hpp"
#include "ssp/ftap.hpp"
#include "ssp/hedging.hpp"
#include "ssp/maximality.hpp"
#include "ssp/numeraire.hpp"
#include "support/random_models.hpp"

namespace {

using namespace ssp;
using testing::ModelGenerator;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Tally {
 public:
  void expect(bool condition, const std::string& what) {
    if (!condition) {
      ++failures_;
      if (first_.empty()) first_ = what;
    }
  }
  bool ok() const { return failures_ == 0; }
  std::string failure_note() const {
    return failures_ == 0 ? "" : "; " + std::to_string(failures_) + " failed, first: " + first_;
  }

 private:
  int failures_ = 0;
  std::string first_;
};

bool all_zero(const RationalVector& v) {
  for (const auto& x : v) {
    if (x != 0) return false;
  }
  return true;
}

// A random strictly positive point of the ESMM polytope: the found ESMM mixed
// with an optimal vertex for a random linear objective.
Measure sample_esmm(ModelGenerator& gen, const MarketModel& m, const Measure& interior) {
  Claim direction;
  for (std::size_t k = 0; k < m.tree().leaf_count(); ++k) direction.payoff.push_back(gen.small_rational(-5, 5, 3));
  Measure vertex = maximize_expectation(m, direction).vertex;
  const Rational lambda(gen.uniform(1, 9), 10);
  Measure mix;
  for (std::size_t k = 0; k < interior.terminal_weight.size(); ++k) {
    mix.terminal_weight.push_back((1 - lambda) * interior.terminal_weight[k] + lambda * vertex.terminal_weight[k]);
  }
  return mix;
}

// ---------------------------------------------------------------------------

Outcome ftap_dichotomy() {
  ModelGenerator gen(1001);
  Tally t;
  int with_measure = 0, with_arbitrage = 0;
  const int trials = 600;
  for (int c = 0; c < trials; ++c) {
    MarketModel m = gen.model();
    auto measure = esmm_feasibility(m);
    auto arb = find_arbitrage(m);
    t.expect(measure.has_value() != arb.has_value(), "dichotomy at case " + std::to_string(c));
    if (measure) {
      ++with_measure;
      t.expect(measure->is_equivalent(), "measure not equivalent");
      t.expect(classify_measure(m, *measure).is_esmm(), "measure not an ESMM");
    }
    if (arb) {
      ++with_arbitrage;
      t.expect(is_admissible(m, arb->strategy).admissible, "arbitrage not admissible");
      Claim payoff = terminal_values(m.tree(), stochastic_integral(m, arb->strategy));
      t.expect(payoff.payoff == arb->payoff.payoff, "arbitrage payoff mismatch");
      bool nonnegative = true, positive = false;
      for (const auto& x : payoff.payoff) {
        nonnegative = nonnegative && x >= 0;
        positive = positive || x > 0;
      }
      t.expect(nonnegative && positive, "arbitrage payoff not in L+ \\ {0}");
    }
  }
  return {t.ok(), std::to_string(trials) + " trees, " + std::to_string(with_measure) + " ESMM, " +
                      std::to_string(with_arbitrage) + " arbitrage" + t.failure_note()};
}

Outcome strong_duality() {
  ModelGenerator gen(1002);
  Tally t;
  int instances = 0;
  while (instances < 250) {
    MarketModel m = gen.model();
    auto esmm = esmm_feasibility(m);
    if (!esmm) continue;
    ++instances;
    Claim f = gen.claim(m.tree());
    HedgePrice price = superreplication_price(m, f);
    Superhedge hedge = superhedge(m, f);
    t.expect(price.value == hedge.initial_capital, "price differs from hedge cost");
    t.expect(all_zero(hedge_residual(m, f, hedge)), "f != x + (H·S)_T − C_T");
    const auto& tree = m.tree();
    t.expect(hedge.consumption.cumulative[tree.root()] == 0, "C_root != 0");
    for (NodeId n : tree.bfs_order()) {
      if (auto p = tree.parent(n)) {
        t.expect(hedge.consumption.cumulative[n] >= hedge.consumption.cumulative[*p], "C decreasing");
      }
    }
    t.expect(is_admissible(m, hedge.strategy).admissible, "hedge not admissible");
    const Measure& w = *price.witness_measure;
    t.expect(classify_measure(m, w).constraints_hold, "witness outside polytope");
    t.expect(dot(w.terminal_weight, f.payoff) == price.value, "witness does not attain price");
  }
  return {t.ok(), std::to_string(instances) + " instances" + t.failure_note()};
}

Outcome digital_option() {
  Tally t;
  std::string depths;
  auto [crr_up, crr_down] = experiments::crr_factors(0.2, 0.125);
  const std::pair<Rational, Rational> lattices[] = {{Rational(2), Rational(1, 2)}, {crr_up, crr_down}};
  for (const auto& [up, down] : lattices) {
    for (int n = 1; n <= 8; ++n) {
      MarketModel m = experiments::binomial_model(n, 1, up, down);
      Claim f = experiments::lattice_claim(m, experiments::LatticeKind::Digital, {1, up, down, 1});
      HedgePrice price = superreplication_price(m, f);
      t.expect(price.value == 1, "digital price != 1 at depth " + std::to_string(n));
      t.expect(!price.attained_by_equivalent, "digital attained at depth " + std::to_string(n));
      t.expect(!is_attainable(m, f).attainable, "digital attainable at depth " + std::to_string(n));
    }
  }
  return {t.ok(), "depths 1-8 on up/down = 2, 1/2 and CRR " + to_string(crr_up) + t.failure_note()};
}

Outcome put_option() {
  Tally t;
  std::vector<int> depths{1, 2, 3, 4, 5, 6, 7, 8};
  experiments::LatticeParams params;  // S0 = 1, K = 1, up = 2, down = 1/2
  auto rows = experiments::lattice_family_study(experiments::LatticeKind::Put, depths, params);
  Rational down_n = 1;
  std::optional<int> limit_depth;
  double limit_gap = 1.0;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    down_n *= params.down;
    const Rational expected = params.strike - down_n * params.s0;
    t.expect(rows[k].price == expected, "put price at depth " + std::to_string(rows[k].depth));
    t.expect(!rows[k].attained_by_equivalent, "put attained at depth " + std::to_string(rows[k].depth));
    if (k > 0) t.expect(rows[k].price > rows[k - 1].price, "put price not increasing");
    if (!limit_depth && down_n * params.s0 < Rational(1, 100) * params.strike) {
      limit_depth = rows[k].depth;
      limit_gap = to_double(params.strike - rows[k].price);
    }
  }
  t.expect(limit_depth && limit_gap < 1e-2, "limit gap");
  // A second parameterization with K > S0.
  experiments::LatticeParams wide{Rational(1), Rational(3, 2), Rational(2, 3), Rational(3, 2)};
  std::vector<int> few{1, 2, 3, 4, 5};
  Rational d_n = 1;
  for (const auto& row : experiments::lattice_family_study(experiments::LatticeKind::Put, few, wide)) {
    d_n *= wide.down;
    t.expect(row.price == wide.strike - d_n * wide.s0, "put price with K = 3/2");
  }
  char gap[64];
  std::snprintf(gap, sizeof gap, "%.6f", limit_gap);
  return {t.ok(), "exact at depths 1-8; gap " + std::string(gap) + " at depth " +
                      (limit_depth ? std::to_string(*limit_depth) : "?") + t.failure_note()};
}

Outcome black_scholes_tilt() {
  Tally t;
  int points = 0;
  double worst_z = 0.0, slowest = 0.0;
  for (double mu : {-0.05, 0.0, 0.05, 0.1}) {
    for (double sigma : {0.2, 0.3, 0.4}) {
      for (auto sampler : {experiments::BsSampler::ImportanceWeights, experiments::BsSampler::TiltedDrift}) {
        const bool weighted = sampler == experiments::BsSampler::ImportanceWeights;
        double previous = 0.0;
        for (double extra : weighted ? std::vector<double>{0.0, 0.5, 1.0, 1.5, 2.0}
                                     : std::vector<double>{0.0, 2.0, 5.0, 10.0, 20.0}) {
          experiments::BsTiltParams p;
          p.mu = mu;
          p.sigma = sigma;
          p.gamma = mu / sigma + extra;
          p.paths = 10000;
          p.sampler = sampler;
          auto start = std::chrono::steady_clock::now();
          auto est = experiments::bs_tilted_expectation(p);
          slowest = std::max(slowest, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
          ++points;
          worst_z = std::max(worst_z, std::abs(est.z_score()));
          t.expect(std::abs(est.z_score()) < 3.0, "z-score beyond 3");
          t.expect(est.estimate > previous, "estimate not increasing in gamma");
          previous = est.estimate;
        }
      }
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "%d grid points at 1e4 paths, max |z| %.2f, slowest %.3fs", points, worst_z,
                slowest);
  return {t.ok(), buf + t.failure_note()};
}

Outcome maximal_claims() {
  ModelGenerator gen(1006);
  Tally t;
  int instances = 0, holds_ii = 0, iv_checked = 0, i_evaluated = 0;
  while (instances < 240) {
    MarketModel m = gen.model();
    auto esmm = esmm_feasibility(m);
    if (!esmm) continue;
    Claim f;
    switch (instances % 4) {
      case 0:  // gains of an admissible strategy
      case 1: {
        f = terminal_values(m.tree(), stochastic_integral(m, gen.strategy(m)));
        break;
      }
      case 2: {  // random claim net of its superreplication price
        f = gen.claim(m.tree());
        const Rational price = superreplication_price(m, f).value;
        for (auto& x : f.payoff) x -= price;
        break;
      }
      default: {  // gains shifted down
        f = terminal_values(m.tree(), stochastic_integral(m, gen.strategy(m)));
        for (auto& x : f.payoff) x -= Rational(1, 5);
        break;
      }
    }
    ++instances;
    auto r = classify_maximal(m, f);
    t.expect(r.sup_attained.holds == r.martingale_replication.holds, "(ii) and (iii) disagree");
    if (r.sup_attained.holds) {
      ++holds_ii;
      t.expect(r.same_witness, "R* of (ii) does not certify (iii)");
      t.expect(is_maximal_in_K(m, f).maximal, "(ii) without maximality in K");
    }
    if (r.all_elmm_martingale.applicable) {
      ++iv_checked;
      if (r.martingale_replication.holds) t.expect(r.all_elmm_martingale.holds, "(iii) without (iv)");
    }
    if (r.auxiliary_maximal.evaluated) {
      ++i_evaluated;
      t.expect(r.auxiliary_maximal.holds == r.sup_attained.holds, "(i) and (ii) disagree");
    }
  }
  return {t.ok(), std::to_string(instances) + " claims, " + std::to_string(holds_ii) + " maximal, " +
                      std::to_string(iv_checked) + " with ELMM vertices, " + std::to_string(i_evaluated) +
                      " auxiliary-market checks" + t.failure_note()};
}

// Strategy over (S, 1, V) whose cash leg keeps the original side
// self-financing, optionally broken at one node.
Strategy transport_strategy(ModelGenerator& gen, const MarketModel& m, const NumeraireProcess& v, bool self_financing) {
  const auto& tree = m.tree();
  const std::size_t n = m.asset_count();
  Strategy s;
  s.holdings.resize(tree.node_count());
  for (NodeId node : tree.bfs_order()) {
    if (tree.is_terminal(node)) continue;
    RationalVector h(n + 2);
    for (std::size_t i = 0; i < n; ++i) h[i] = gen.small_rational(-3, 3, 2);
    h[n + 1] = gen.small_rational(-3, 3, 2);
    if (auto p = tree.parent(node)) {
      const auto& prev = s.holdings[*p];
      Rational before = prev[n] + prev[n + 1] * v.value[node];
      Rational after = h[n + 1] * v.value[node];
      for (std::size_t i = 0; i < n; ++i) {
        before += prev[i] * m.price(node, i);
        after += h[i] * m.price(node, i);
      }
      h[n] = before - after;
      if (!self_financing) h[n] += gen.small_rational(1, 3, 2);
    } else {
      h[n] = gen.small_rational(-3, 3, 2);
    }
    s.holdings[node] = std::move(h);
  }
  return s;
}

Outcome numeraire_change() {
  ModelGenerator gen(1007);
  Tally t;
  int transport = 0, both_hold = 0, both_fail = 0;
  while (transport < 600) {
    MarketModel m = gen.model();
    NumeraireProcess v;
    for (NodeId n = 0; n < m.tree().node_count(); ++n) v.value.push_back(gen.small_rational(1, 6, 3));
    const bool financed = transport % 2 == 0;
    Strategy s = transport_strategy(gen, m, v, financed);
    auto check = self_financing_transport(m, v, s);
    ++transport;
    t.expect(check.agree(), "transport identities disagree");
    t.expect(check.original_identity == financed || !financed, "financed strategy fails original identity");
    both_hold += check.deflated_identity && check.original_identity;
    both_fail += !check.deflated_identity && !check.original_identity;
    for (std::size_t k = 0; k < check.deflated_per_node.size(); ++k) {
      t.expect(check.deflated_per_node[k] == check.original_per_node[k], "per-node identities disagree");
    }
  }

  int na_checks = 0, na_true = 0, box_stable = 0;
  while (na_checks < 240) {
    MarketModel m = gen.model();
    NumeraireProcess v;
    if (na_checks % 2 == 0) {
      for (NodeId n = 0; n < m.tree().node_count(); ++n) v.value.push_back(gen.small_rational(1, 6, 3));
    } else {
      // V = a + (H·S), bounded away from zero.
      auto gains = stochastic_integral(m, gen.strategy(m));
      Rational floor = 0;
      for (const auto& g : gains.value) floor = g < floor ? g : floor;
      for (const auto& g : gains.value) v.value.push_back(g - floor + Rational(1, 2));
    }
    auto check = na_after_numeraire_check(m, v);
    ++na_checks;
    na_true += check.na;
    t.expect(check.agree, "NA and D-maximality disagree");
    auto doubled = na_after_numeraire_check(m, v, Rational(2));
    box_stable += doubled.maximal == check.maximal;
    t.expect(doubled.maximal == check.maximal, "D verdict changes under box doubling");
  }
  return {t.ok(), std::to_string(transport) + " transport triples (" + std::to_string(both_hold) + " both hold, " +
                      std::to_string(both_fail) + " both fail), " + std::to_string(na_checks) + " NA/D checks (" +
                      std::to_string(na_true) + " NA), " + std::to_string(box_stable) + " box-stable" +
                      t.failure_note()};
}

Outcome invariant_suites() {
  ModelGenerator gen(1008);
  Tally t;
  int models = 0, measures = 0, strategies = 0;
  while (models < 200) {
    MarketModel m = gen.model();
    auto esmm = esmm_feasibility(m);
    if (!esmm) continue;
    ++models;
    const auto& tree = m.tree();
    Claim f = gen.claim(tree);
    ValueProcess v = price_process(m, f);
    HedgePrice price = superreplication_price(m, f);
    t.expect(v.value[tree.root()] == price.value, "backward and global prices differ");
    for (std::size_t k = 0; k < tree.leaf_count(); ++k) t.expect(v.value[tree.leaves()[k]] == f.payoff[k], "V_T != f");
    std::vector<Strategy> sample;
    for (int s = 0; s < 4; ++s) sample.push_back(gen.strategy(m));
    for (int k = 0; k < 4; ++k) {
      Measure q = k == 0 ? *esmm : sample_esmm(gen, m, *esmm);
      ++measures;
      t.expect(classify_measure(m, q).is_esmm(), "sampled measure not an ESMM");
      t.expect(is_supermartingale(tree, q, v), "V not a supermartingale");
      for (const auto& h : sample) {
        ++strategies;
        t.expect(is_supermartingale(tree, q, stochastic_integral(m, h)), "(H·S) not a supermartingale");
      }
    }
    Attainability a = is_attainable(m, f);
    if (a.attainable) t.expect(a.martingale_verified, "attainable claim without martingale hedge");
  }
  return {t.ok(), std::to_string(models) + " models, " + std::to_string(measures) + " ESMMs, " +
                      std::to_string(strategies) + " strategy/measure pairs" + t.failure_note()};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"1 FTAP dichotomy", ftap_dichotomy},
      {"2 strong duality", strong_duality},
      {"3 digital option", digital_option},
      {"4 put option", put_option},
      {"5 Black-Scholes tilt", black_scholes_tilt},
      {"6 maximal claims", maximal_claims},
      {"7 numeraire change", numeraire_change},
      {"8 invariant suites", invariant_suites},
  };
  bool all = true;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s  %-22s %s (%.1fs)\n", out.pass ? "PASS" : "FAIL", c.name, out.detail.c_str(), seconds);
    std::fflush(stdout);
    all = all && out.pass;
  }
  return all ? 0 : 1;
}
