#pragma once

#include <filesystem>
#include "json.hpp"

#include "ssp/hedging.hpp"
#include "ssp/market.hpp"
#include "ssp/measures.hpp"
#include "ssp/numeraire.hpp"

/// JSON documents. Rationals are exact fraction strings ("p/q" or "p").
///
/// Model:      {"n_assets": N, "shortable_count": d,
///              "nodes": [{"id": 0, "parent": null, "weight": "1", "prices": ["1"]}, ...]}
/// Claim, measure, numeraire, value process: {"<node id>": "p/q", ...}
/// Strategy:   {"<node id>": ["p/q", ...], ...} over non-terminal nodes
namespace ssp::io {

using Json = nlohmann::json;

MarketModel parse_model(const Json& doc);
Json model_to_json(const MarketModel& model);

Claim parse_claim(const Json& doc, const EventTree& tree);
Json claim_to_json(const EventTree& tree, const Claim& claim);

Strategy parse_strategy(const Json& doc, const EventTree& tree);
Json strategy_to_json(const EventTree& tree, const Strategy& strategy);

Measure parse_measure(const Json& doc, const EventTree& tree);
Json measure_to_json(const EventTree& tree, const Measure& measure);

NumeraireProcess parse_numeraire(const Json& doc, const EventTree& tree);
Json process_to_json(const RationalVector& per_node);

Json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const Json& doc);

}  // namespace ssp::io
