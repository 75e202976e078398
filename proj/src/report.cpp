#include "ssp/report.hpp"

#include <algorithm>
#include <sstream>

#include "ssp/errors.hpp"
#include "ssp/ftap.hpp"
#include "ssp/hedging.hpp"
#include "ssp/maximality.hpp"
#include "ssp/numeraire.hpp"

namespace ssp::report {

namespace {

Json measure_doc(const EventTree& tree, const Measure& m) { return io::measure_to_json(tree, m); }
Json strategy_doc(const EventTree& tree, const Strategy& s) { return io::strategy_to_json(tree, s); }

bool has_negative(const Claim& claim) {
  return std::any_of(claim.payoff.begin(), claim.payoff.end(), [](const Rational& x) { return x < 0; });
}

}  // namespace

Json inline_witness(const std::string&, const Json& doc) { return doc; }

Json check_arbitrage(const Json& model_doc, const Emitter& emit) {
  auto model = io::parse_model(model_doc);
  auto report = ssp::check_arbitrage(model);
  Json out;
  if (report.nflvr) {
    out["status"] = "NFLVR";
    out["measure"] = measure_doc(model.tree(), *report.measure);
    out["witness"] = emit("esmm.json", out["measure"]);
  } else {
    out["status"] = "ARBITRAGE";
    out["witness"] = emit("arbitrage_strategy.json", strategy_doc(model.tree(), report.arbitrage->strategy));
    out["payoff"] = io::claim_to_json(model.tree(), report.arbitrage->payoff);
  }
  return out;
}

Json price(const Json& model_doc, const Json& claim_doc, bool signed_claim, const Emitter& emit) {
  auto model = io::parse_model(model_doc);
  auto claim = io::parse_claim(claim_doc, model.tree());
  const bool shift = signed_claim && has_negative(claim);
  auto result = shift ? superreplication_price_bounded_below(model, claim) : superreplication_price(model, claim);
  auto hedge = shift ? superhedge_bounded_below(model, claim) : superhedge(model, claim);
  const auto& tree = model.tree();
  Json out;
  out["price"] = to_string(result.value);
  out["price_decimal"] = to_double(result.value);
  out["attained_by_equivalent"] = result.attained_by_equivalent;
  out["witness_measure"] = emit("witness_measure.json", measure_doc(tree, *result.witness_measure));
  out["witness_strategy"] = emit("strategy.json", strategy_doc(tree, hedge.strategy));
  out["witness_consumption"] = emit("consumption.json", io::process_to_json(hedge.consumption.cumulative));
  if (!shift) out["price_process"] = io::process_to_json(price_process(model, claim).value);
  return out;
}

Json hedge(const Json& model_doc, const Json& claim_doc, bool signed_claim, const Emitter& emit) {
  auto model = io::parse_model(model_doc);
  auto claim = io::parse_claim(claim_doc, model.tree());
  auto h = signed_claim ? superhedge_bounded_below(model, claim) : superhedge(model, claim);
  auto residual = hedge_residual(model, claim, h);
  Json out;
  out["x"] = to_string(h.initial_capital);
  out["strategy"] = emit("strategy.json", strategy_doc(model.tree(), h.strategy));
  out["consumption"] = emit("consumption.json", io::process_to_json(h.consumption.cumulative));
  out["verified"] = std::all_of(residual.begin(), residual.end(), [](const Rational& r) { return r == 0; });
  return out;
}

Json classify(const Json& model_doc, const Json& claim_doc, const Emitter& emit) {
  auto model = io::parse_model(model_doc);
  auto claim = io::parse_claim(claim_doc, model.tree());
  auto r = classify_maximal(model, claim);
  auto k = is_maximal_in_K(model, claim);
  const auto& tree = model.tree();

  Json ii;
  ii["holds"] = r.sup_attained.holds;
  ii["max_expectation"] = to_string(r.sup_attained.max_expectation);
  ii["optimal_vertex"] = emit("ii_vertex.json", measure_doc(tree, r.sup_attained.vertex));
  if (r.sup_attained.r_star) ii["r_star"] = emit("ii_r_star.json", measure_doc(tree, *r.sup_attained.r_star));

  const auto& rep = r.martingale_replication;
  Json iii;
  iii["holds"] = rep.holds;
  iii["replicable"] = rep.replicable;
  if (rep.strategy) iii["strategy"] = emit("iii_strategy.json", strategy_doc(tree, *rep.strategy));
  if (rep.r_star) iii["r_star"] = emit("iii_r_star.json", measure_doc(tree, *rep.r_star));

  const auto& all = r.all_elmm_martingale;
  Json iv;
  iv["applicable"] = all.applicable;
  iv["holds"] = all.holds;
  iv["vertices_checked"] = all.vertices_checked;
  if (all.counterexample) iv["counterexample"] = emit("iv_counterexample.json", measure_doc(tree, *all.counterexample));

  Json i;
  i["evaluated"] = r.auxiliary_maximal.evaluated;
  i["auxiliary_nflvr"] = r.auxiliary_maximal.auxiliary_nflvr;
  i["maximal_in_B"] = r.auxiliary_maximal.maximal_in_B;
  i["holds"] = r.auxiliary_maximal.holds;

  Json kk;
  kk["maximal"] = k.maximal;
  kk["in_K"] = k.in_K;
  if (k.dominator) kk["dominator"] = emit("k_dominator.json", strategy_doc(tree, *k.dominator));

  return Json{{"i_auxiliary_maximal", i},
              {"ii_sup_attained", ii},
              {"iii_martingale_replication", iii},
              {"iv_all_elmm_martingale", iv},
              {"same_witness", r.same_witness},
              {"maximal_in_K", kk}};
}

Json numeraire_transport(const Json& model_doc, const Json& numeraire_doc, const Json& strategy_doc_in) {
  auto model = io::parse_model(model_doc);
  const auto& tree = model.tree();
  auto v = io::parse_numeraire(numeraire_doc, tree);
  auto s = io::parse_strategy(strategy_doc_in, tree);
  auto t = self_financing_transport(model, v, s);
  Json failing = Json::array();
  for (NodeId n = 0; n < t.deflated_per_node.size(); ++n) {
    if (!t.deflated_per_node[n] || !t.original_per_node[n]) failing.push_back(n);
  }
  return Json{{"deflated_identity", t.deflated_identity},
              {"original_identity", t.original_identity},
              {"agree", t.agree()},
              {"failing_nodes", failing}};
}

Json numeraire_na(const Json& model_doc, const Json& numeraire_doc, const std::string& scale, const Emitter& emit) {
  auto model = io::parse_model(model_doc);
  const auto& tree = model.tree();
  auto c = na_after_numeraire_check(model, io::parse_numeraire(numeraire_doc, tree), parse_rational(scale));
  Json out;
  out["na"] = c.na;
  out["maximal"] = c.maximal;
  out["agree"] = c.agree;
  out["holdings_box"] = to_string(c.holdings_box);
  out["floor_box"] = to_string(c.floor_box);
  if (c.arbitrage) out["arbitrage"] = emit("deflated_arbitrage.json", strategy_doc(tree, c.arbitrage->strategy));
  if (c.dominator) out["dominator"] = emit("d_dominator.json", strategy_doc(tree, *c.dominator));
  return out;
}

// ---------------------------------------------------------------------------

Table experiment_bs(const BsOptions& o, std::uint64_t seed) {
  using experiments::BsSampler;
  if (o.sampler != "importance" && o.sampler != "drift") throw StructuralError("unknown sampler " + o.sampler);
  std::vector<experiments::BsTiltParams> grid;
  std::vector<experiments::McEstimate> rows;
  Json table = Json::array();
  for (double gamma : o.gammas) {
    experiments::BsTiltParams p;
    p.s0 = o.s0;
    p.mu = o.mu;
    p.sigma = o.sigma;
    p.gamma = gamma;
    p.maturity = o.maturity;
    p.paths = o.paths;
    p.seed = seed;
    p.sampler = o.sampler == "drift" ? BsSampler::TiltedDrift : BsSampler::ImportanceWeights;
    grid.push_back(p);
    rows.push_back(experiments::bs_tilted_expectation(p));
    const auto& r = rows.back();
    table.push_back({{"gamma", gamma},
                     {"estimate", r.estimate},
                     {"stderr", r.standard_error},
                     {"closed_form", r.closed_form},
                     {"z_score", r.z_score()}});
  }
  std::ostringstream text;
  experiments::write_bs_csv(text, grid, rows);
  return {Json{{"seed", seed}, {"rows", table}}, text.str()};
}

Table experiment_stochexp(const StochexpOptions& o, std::uint64_t seed) {
  auto rows = experiments::stochexp_alpha_curve(o.params, o.alphas);
  Json table = Json::array();
  for (const auto& r : rows) {
    Json row{{"alpha", r.alpha}, {"closed_form", r.closed_form}, {"lp_price", r.lp_price}};
    row["lattice_tilted"] = r.lattice_tilted ? Json(*r.lattice_tilted) : Json(nullptr);
    table.push_back(row);
  }
  std::ostringstream text;
  experiments::write_stochexp_csv(text, o.params, rows, seed);
  return {Json{{"seed", seed}, {"rows", table}}, text.str()};
}

Table experiment_lattice(const LatticeOptions& o, std::uint64_t seed) {
  using experiments::LatticeKind;
  LatticeKind kind;
  if (o.kind == "digital") {
    kind = LatticeKind::Digital;
  } else if (o.kind == "put") {
    kind = LatticeKind::Put;
  } else if (o.kind == "reciprocal") {
    kind = LatticeKind::Reciprocal;
  } else {
    throw StructuralError("unknown lattice kind " + o.kind);
  }
  experiments::LatticeParams params{parse_rational(o.s0), parse_rational(o.up), parse_rational(o.down),
                                    parse_rational(o.strike)};
  if (o.crr_sigma > 0) {
    auto [up, down] = experiments::crr_factors(o.crr_sigma, o.crr_dt > 0 ? o.crr_dt : 1.0);
    params.up = up;
    params.down = down;
  }
  auto rows = experiments::lattice_family_study(kind, o.depths, params);
  Json table = Json::array();
  for (const auto& r : rows) {
    Json row{{"depth", r.depth},
             {"price", to_string(r.price)},
             {"price_decimal", to_double(r.price)},
             {"closed_form", to_string(r.closed_form)},
             {"attained_by_equivalent", r.attained_by_equivalent}};
    row["growth"] = r.growth ? Json(*r.growth) : Json(nullptr);
    table.push_back(row);
  }
  std::ostringstream text;
  experiments::write_lattice_csv(text, kind, rows, seed);
  return {Json{{"seed", seed},
               {"kind", o.kind},
               {"up", to_string(params.up)},
               {"down", to_string(params.down)},
               {"rows", table}},
          text.str()};
}

}  // namespace ssp::report
