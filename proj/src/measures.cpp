#include "ssp/measures.hpp"

#include "ssp/errors.hpp"

namespace ssp {

void Measure::validate(const EventTree& tree) const {
  if (terminal_weight.size() != tree.leaf_count()) {
    throw StructuralError("measure has " + std::to_string(terminal_weight.size()) + " weights for " +
                          std::to_string(tree.leaf_count()) + " terminal nodes");
  }
  Rational total = 0;
  for (const auto& w : terminal_weight) {
    if (w < 0) throw DomainError("negative terminal weight");
    total += w;
  }
  if (total != 1) throw DomainError("terminal weights sum to " + to_string(total));
}

bool Measure::is_equivalent() const {
  for (const auto& w : terminal_weight) {
    if (w <= 0) return false;
  }
  return true;
}

Measure Measure::reference(const EventTree& tree) { return Measure{tree.reference_leaf_weights()}; }

std::string to_string(MeasureClass tag) {
  switch (tag) {
    case MeasureClass::ESMM:
      return "ESMM";
    case MeasureClass::ELMM:
      return "ELMM";
    case MeasureClass::AbsolutelyContinuousSupermartingale:
      return "AbsolutelyContinuousSupermartingale";
  }
  return "?";
}

std::string to_string(AssetBehaviour behaviour) {
  switch (behaviour) {
    case AssetBehaviour::Martingale:
      return "Martingale";
    case AssetBehaviour::Supermartingale:
      return "Supermartingale";
    case AssetBehaviour::Neither:
      return "Neither";
  }
  return "?";
}

RationalVector node_masses(const EventTree& tree, const Measure& measure) {
  measure.validate(tree);
  RationalVector mass(tree.node_count());
  for (NodeId v = 0; v < tree.node_count(); ++v) {
    for (std::size_t k : tree.leaves_below(v)) mass[v] += measure.terminal_weight[k];
  }
  return mass;
}

Rational conditional_expectation(const EventTree& tree, const Measure& measure, const Claim& terminal_values,
                                 NodeId node) {
  measure.validate(tree);
  if (terminal_values.payoff.size() != tree.leaf_count()) throw StructuralError("claim length differs from leaf count");
  Rational mass = 0;
  Rational weighted = 0;
  for (std::size_t k : tree.leaves_below(node)) {
    const Rational& w = measure.terminal_weight[k];
    if (w == 0) continue;
    mass += w;
    weighted += w * terminal_values.payoff[k];
  }
  if (mass == 0) throw ZeroMassError("node " + std::to_string(node) + " has zero mass");
  return weighted / mass;
}

std::vector<std::optional<Rational>> conditional_expectation_process(const EventTree& tree, const Measure& measure,
                                                                     const Claim& terminal_values) {
  std::vector<std::optional<Rational>> out(tree.node_count());
  for (NodeId v = 0; v < tree.node_count(); ++v) {
    try {
      out[v] = conditional_expectation(tree, measure, terminal_values, v);
    } catch (const ZeroMassError&) {
      out[v].reset();
    }
  }
  return out;
}

std::optional<Rational> one_step_drift(const EventTree& tree, const RationalVector& mass,
                                       const RationalVector& process, NodeId node) {
  if (tree.is_terminal(node) || mass[node] == 0) return std::nullopt;
  Rational drift = 0;
  for (NodeId c : tree.children(node)) {
    if (mass[c] != 0) drift += mass[c] * (process[c] - process[node]);
  }
  return drift / mass[node];
}

namespace {

AssetBehaviour classify_process(const EventTree& tree, const RationalVector& mass, const RationalVector& process) {
  bool martingale = true;
  for (NodeId v : tree.internal_nodes()) {
    auto drift = one_step_drift(tree, mass, process, v);
    if (!drift) continue;
    if (*drift > 0) return AssetBehaviour::Neither;
    if (*drift < 0) martingale = false;
  }
  return martingale ? AssetBehaviour::Martingale : AssetBehaviour::Supermartingale;
}

}  // namespace

MeasureVerdict classify_measure(const MarketModel& model, const Measure& measure) {
  const auto& tree = model.tree();
  RationalVector mass = node_masses(tree, measure);
  MeasureVerdict verdict;
  verdict.equivalent = measure.is_equivalent();
  verdict.constraints_hold = true;
  verdict.all_martingales = true;
  for (std::size_t i = 0; i < model.asset_count(); ++i) {
    RationalVector column(tree.node_count());
    for (NodeId v = 0; v < tree.node_count(); ++v) column[v] = model.price(v, i);
    AssetBehaviour b = classify_process(tree, mass, column);
    verdict.per_asset.push_back(b);
    if (b != AssetBehaviour::Martingale) verdict.all_martingales = false;
    if (b == AssetBehaviour::Neither || (model.is_shortable(i) && b != AssetBehaviour::Martingale)) {
      verdict.constraints_hold = false;
    }
  }
  if (verdict.equivalent && verdict.all_martingales) {
    verdict.tag = MeasureClass::ELMM;
  } else if (verdict.equivalent && verdict.constraints_hold) {
    verdict.tag = MeasureClass::ESMM;
  } else if (verdict.constraints_hold) {
    verdict.tag = MeasureClass::AbsolutelyContinuousSupermartingale;
  }
  return verdict;
}

bool is_martingale(const EventTree& tree, const Measure& measure, const ValueProcess& process) {
  RationalVector mass = node_masses(tree, measure);
  return classify_process(tree, mass, process.value) == AssetBehaviour::Martingale;
}

bool is_supermartingale(const EventTree& tree, const Measure& measure, const ValueProcess& process) {
  RationalVector mass = node_masses(tree, measure);
  return classify_process(tree, mass, process.value) != AssetBehaviour::Neither;
}

lp::Builder measure_polytope(const MarketModel& model, PolytopeKind kind) {
  const auto& tree = model.tree();
  lp::Builder b;
  std::vector<lp::Builder::Term> normalization;
  for (std::size_t k = 0; k < tree.leaf_count(); ++k) {
    b.add_variable(lp::Bound::NonNegative);
    normalization.emplace_back(k, Rational(1));
  }
  b.add_row(normalization, lp::Relation::Equal, Rational(1));

  for (NodeId v : tree.internal_nodes()) {
    for (std::size_t i = 0; i < model.asset_count(); ++i) {
      std::vector<lp::Builder::Term> terms;
      for (std::size_t k : tree.leaves_below(v)) {
        NodeId c = tree.child_towards(v, tree.leaves()[k]);
        Rational increment = model.price(c, i) - model.price(v, i);
        if (increment != 0) terms.emplace_back(k, std::move(increment));
      }
      if (terms.empty()) continue;
      bool equality = kind == PolytopeKind::Martingale || model.is_shortable(i);
      b.add_row(terms, equality ? lp::Relation::Equal : lp::Relation::LessEqual, Rational(0));
    }
  }
  return b;
}

}  // namespace ssp
