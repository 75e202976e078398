#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ssp/experiments.hpp"
#include "ssp/io.hpp"

/// JSON reports shared by the command-line tool and the Python module. Inputs
/// are documents in the on-disk formats; witnesses are handed to an Emitter,
/// whose return value is stored in the report (a file path for the CLI, the
/// document itself for Python).
namespace ssp::report {

using io::Json;
using Emitter = std::function<Json(const std::string& name, const Json& doc)>;

/// Emitter that keeps each witness inline.
Json inline_witness(const std::string& name, const Json& doc);

Json check_arbitrage(const Json& model, const Emitter& emit);

/// `signed_claim` allows payoffs bounded below; they are priced after a shift.
Json price(const Json& model, const Json& claim, bool signed_claim, const Emitter& emit);
Json hedge(const Json& model, const Json& claim, bool signed_claim, const Emitter& emit);
Json classify(const Json& model, const Json& claim, const Emitter& emit);

Json numeraire_transport(const Json& model, const Json& numeraire, const Json& strategy);
Json numeraire_na(const Json& model, const Json& numeraire, const std::string& scale, const Emitter& emit);

struct Table {
  Json report;
  std::string csv;
};

struct BsOptions {
  double s0 = 1.0, mu = 0.0, sigma = 0.2, maturity = 1.0;
  std::vector<double> gammas{0.0, 0.5, 1.0, 1.5, 2.0};
  std::size_t paths = 10000;
  std::string sampler = "importance";
};

struct StochexpOptions {
  experiments::StochexpParams params;
  std::vector<double> alphas{0, 1, 2, 3, 4, 5, 6, 7, 8};
};

struct LatticeOptions {
  std::string kind = "digital";
  std::vector<int> depths{1, 2, 3, 4, 5, 6};
  std::string s0 = "1", up = "2", down = "1/2", strike = "1";
  /// CRR factors replace up/down when crr_sigma > 0.
  double crr_sigma = 0.0, crr_dt = 0.0;
};

Table experiment_bs(const BsOptions& options, std::uint64_t seed);
Table experiment_stochexp(const StochexpOptions& options, std::uint64_t seed);
Table experiment_lattice(const LatticeOptions& options, std::uint64_t seed);

}  // namespace ssp::report
