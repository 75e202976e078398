#include "ssp/io.hpp"

#include <fstream>

#include "ssp/errors.hpp"

namespace ssp::io {

namespace {

Rational rational_field(const Json& value) {
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_number_integer()) return Rational(value.get<long long>());
  throw StructuralError("expected a fraction string, got " + value.dump());
}

NodeId node_key(const std::string& key, std::size_t node_count) {
  std::size_t pos = 0;
  unsigned long id = 0;
  try {
    id = std::stoul(key, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != key.size() || key.empty()) throw StructuralError("bad node id '" + key + "'");
  if (id >= node_count) throw StructuralError("node id " + key + " out of range");
  return id;
}

Json fraction(const Rational& value) { return to_string(value); }

}  // namespace

MarketModel parse_model_unchecked(const Json& doc);

MarketModel parse_model(const Json& doc) {
  try {
    return parse_model_unchecked(doc);
  } catch (const Json::exception& e) {
    throw StructuralError(std::string("malformed model document: ") + e.what());
  }
}

MarketModel parse_model_unchecked(const Json& doc) {
  if (!doc.is_object()) throw StructuralError("model document must be an object");
  const auto n_assets = doc.at("n_assets").get<std::size_t>();
  const auto shortable = doc.at("shortable_count").get<std::size_t>();
  const Json& nodes = doc.at("nodes");
  if (!nodes.is_array() || nodes.empty()) throw StructuralError("model needs a nonempty node list");

  const std::size_t n = nodes.size();
  std::vector<std::optional<NodeId>> parent(n);
  RationalVector weight(n, Rational(1));
  std::vector<RationalVector> prices(n);
  std::vector<bool> seen(n, false);
  for (const Json& node : nodes) {
    const auto id = node.at("id").get<std::size_t>();
    if (id >= n || seen[id]) throw StructuralError("node ids must be 0..n-1, each once");
    seen[id] = true;
    const Json& p = node.contains("parent") ? node.at("parent") : Json(nullptr);
    if (!p.is_null()) parent[id] = p.get<std::size_t>();
    if (node.contains("weight")) weight[id] = rational_field(node.at("weight"));
    for (const Json& price : node.at("prices")) prices[id].push_back(rational_field(price));
    if (prices[id].size() != n_assets) {
      throw StructuralError("node " + std::to_string(id) + " lists " + std::to_string(prices[id].size()) +
                            " prices, n_assets is " + std::to_string(n_assets));
    }
  }
  return MarketModel(EventTree::from_parents(std::move(parent), std::move(weight)), std::move(prices), shortable);
}

Json model_to_json(const MarketModel& model) {
  const auto& tree = model.tree();
  Json nodes = Json::array();
  for (NodeId v = 0; v < tree.node_count(); ++v) {
    Json prices = Json::array();
    for (const auto& p : model.price(v)) prices.push_back(fraction(p));
    auto parent = tree.parent(v);
    nodes.push_back({{"id", v},
                     {"parent", parent ? Json(*parent) : Json(nullptr)},
                     {"weight", fraction(tree.branch_weight(v))},
                     {"prices", prices}});
  }
  return {{"n_assets", model.asset_count()}, {"shortable_count", model.shortable_count()}, {"nodes", nodes}};
}

Claim parse_claim(const Json& doc, const EventTree& tree) {
  if (!doc.is_object()) throw StructuralError("claim document must be an object");
  Claim claim{RationalVector(tree.leaf_count())};
  std::vector<bool> seen(tree.leaf_count(), false);
  for (const auto& [key, value] : doc.items()) {
    NodeId v = node_key(key, tree.node_count());
    std::size_t k = tree.leaf_index(v);
    claim.payoff[k] = rational_field(value);
    seen[k] = true;
  }
  for (std::size_t k = 0; k < seen.size(); ++k) {
    if (!seen[k]) throw StructuralError("claim misses terminal node " + std::to_string(tree.leaves()[k]));
  }
  return claim;
}

Json claim_to_json(const EventTree& tree, const Claim& claim) {
  Json doc = Json::object();
  for (std::size_t k = 0; k < tree.leaf_count(); ++k) doc[std::to_string(tree.leaves()[k])] = fraction(claim.payoff.at(k));
  return doc;
}

Strategy parse_strategy(const Json& doc, const EventTree& tree) {
  if (!doc.is_object()) throw StructuralError("strategy document must be an object");
  Strategy s;
  s.holdings.assign(tree.node_count(), {});
  for (const auto& [key, value] : doc.items()) {
    NodeId v = node_key(key, tree.node_count());
    for (const Json& h : value) s.holdings[v].push_back(rational_field(h));
  }
  return s;
}

Json strategy_to_json(const EventTree& tree, const Strategy& strategy) {
  Json doc = Json::object();
  for (NodeId v : tree.internal_nodes()) {
    Json position = Json::array();
    for (const auto& h : strategy.holdings.at(v)) position.push_back(fraction(h));
    doc[std::to_string(v)] = position;
  }
  return doc;
}

Measure parse_measure(const Json& doc, const EventTree& tree) {
  Claim weights = parse_claim(doc, tree);
  Measure m{std::move(weights.payoff)};
  m.validate(tree);
  return m;
}

Json measure_to_json(const EventTree& tree, const Measure& measure) {
  return claim_to_json(tree, Claim{measure.terminal_weight});
}

NumeraireProcess parse_numeraire(const Json& doc, const EventTree& tree) {
  if (!doc.is_object()) throw StructuralError("numeraire document must be an object");
  NumeraireProcess v{RationalVector(tree.node_count())};
  std::vector<bool> seen(tree.node_count(), false);
  for (const auto& [key, value] : doc.items()) {
    NodeId n = node_key(key, tree.node_count());
    v.value[n] = rational_field(value);
    seen[n] = true;
  }
  for (NodeId n = 0; n < seen.size(); ++n) {
    if (!seen[n]) throw StructuralError("numeraire misses node " + std::to_string(n));
  }
  v.validate(tree);
  return v;
}

Json process_to_json(const RationalVector& per_node) {
  Json doc = Json::object();
  for (NodeId v = 0; v < per_node.size(); ++v) doc[std::to_string(v)] = fraction(per_node[v]);
  return doc;
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw StructuralError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw StructuralError(path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const Json& doc) {
  std::ofstream out(path);
  if (!out) throw StructuralError("cannot write " + path.string());
  out << doc.dump(2) << "\n";
}

}  // namespace ssp::io
