// Command-line front end. Every command prints a JSON report on stdout and
// writes witnesses next to it in --out (default: current directory).

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "ssp/errors.hpp"
#include "ssp/report.hpp"

namespace fs = std::filesystem;
using ssp::io::Json;

namespace {

enum ExitCode { kOk = 0, kFailure = 1, kBadInput = 2, kDomain = 3 };

ssp::report::Emitter file_emitter(const std::string& out_dir) {
  return [out_dir](const std::string& name, const Json& doc) {
    fs::create_directories(out_dir);
    fs::path path = fs::path(out_dir) / name;
    ssp::io::write_json(path, doc);
    return Json(path.string());
  };
}

Json load(const std::string& path) { return ssp::io::read_json(path); }

int print(const Json& report) {
  std::cout << report.dump(2) << "\n";
  return kOk;
}

int print_table(const ssp::report::Table& table, const std::string& csv) {
  if (!csv.empty()) {
    std::ofstream out(csv);
    if (!out) throw ssp::StructuralError("cannot write " + csv);
    out << table.csv;
  }
  return print(table.report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Superreplication and no-arbitrage checks on finite event trees"};
  app.require_subcommand(1);
  std::string out_dir = ".";
  app.add_option("--out", out_dir, "Directory for witness files")->capture_default_str();

  std::string model_path, claim_path, numeraire_path, strategy_path, check = "na", scale = "1";
  bool signed_claim = false;

  auto* arb = app.add_subcommand("check-arbitrage", "Decide NFLVR; emit an ESMM or an arbitrage strategy");
  arb->add_option("model", model_path)->required()->check(CLI::ExistingFile);

  auto* pr = app.add_subcommand("price", "Superreplication price with witnesses");
  pr->add_option("model", model_path)->required()->check(CLI::ExistingFile);
  pr->add_option("claim", claim_path)->required()->check(CLI::ExistingFile);
  pr->add_flag("--signed", signed_claim, "Accept claims bounded below by shifting");

  auto* hd = app.add_subcommand("hedge", "Minimal superhedge (x, H, C)");
  hd->add_option("model", model_path)->required()->check(CLI::ExistingFile);
  hd->add_option("claim", claim_path)->required()->check(CLI::ExistingFile);
  hd->add_flag("--signed", signed_claim, "Accept claims bounded below by shifting");

  auto* cl = app.add_subcommand("classify", "Maximal-claim conditions (i)-(iv) and maximality in K");
  cl->add_option("model", model_path)->required()->check(CLI::ExistingFile);
  cl->add_option("claim", claim_path)->required()->check(CLI::ExistingFile);

  auto* nu = app.add_subcommand("numeraire", "Numeraire-change checks");
  nu->add_option("model", model_path)->required()->check(CLI::ExistingFile);
  nu->add_option("numeraire", numeraire_path)->required()->check(CLI::ExistingFile);
  nu->add_option("--check", check)->check(CLI::IsMember({"transport", "na"}))->capture_default_str();
  nu->add_option("--strategy", strategy_path, "Holdings over (S, 1, V) for --check transport")
      ->check(CLI::ExistingFile);
  nu->add_option("--scale", scale, "Box scale for the D-maximality program")->capture_default_str();

  auto* ex = app.add_subcommand("experiment", "Closed-form example reproductions");
  ex->require_subcommand(1);
  std::uint64_t seed = ssp::experiments::kDefaultSeed;
  std::string csv;
  ex->add_option("--seed", seed)->capture_default_str();
  ex->add_option("--csv", csv, "Write the table as CSV");

  ssp::report::BsOptions bs;
  auto* bs_cmd = ex->add_subcommand("bs", "E[1/S_T] under Girsanov tilts of geometric Brownian motion");
  bs_cmd->add_option("--s0", bs.s0)->capture_default_str();
  bs_cmd->add_option("--mu", bs.mu)->capture_default_str();
  bs_cmd->add_option("--sigma", bs.sigma)->capture_default_str();
  bs_cmd->add_option("--maturity", bs.maturity)->capture_default_str();
  bs_cmd->add_option("--gamma", bs.gammas, "Tilt grid")->capture_default_str();
  bs_cmd->add_option("--paths", bs.paths)->capture_default_str();
  bs_cmd->add_option("--sampler", bs.sampler)->check(CLI::IsMember({"importance", "drift"}))->capture_default_str();

  ssp::report::StochexpOptions se;
  auto* se_cmd = ex->add_subcommand("stochexp", "Stochastic exponential alpha curve");
  se_cmd->add_option("--qv", se.params.quadratic_variation, "[R,R]_T")->capture_default_str();
  se_cmd->add_option("--alpha", se.alphas)->capture_default_str();
  se_cmd->add_option("--fine-steps", se.params.fine_steps)->capture_default_str();
  se_cmd->add_option("--coarse-steps", se.params.coarse_steps)->capture_default_str();

  ssp::report::LatticeOptions la;
  auto* la_cmd = ex->add_subcommand("lattice", "Binomial superreplication families");
  la_cmd->add_option("--kind", la.kind)->check(CLI::IsMember({"digital", "put", "reciprocal"}))->capture_default_str();
  la_cmd->add_option("--depth", la.depths)->capture_default_str();
  la_cmd->add_option("--s0", la.s0)->capture_default_str();
  la_cmd->add_option("--up", la.up)->capture_default_str();
  la_cmd->add_option("--down", la.down)->capture_default_str();
  la_cmd->add_option("--strike", la.strike)->capture_default_str();
  la_cmd->add_option("--crr-sigma", la.crr_sigma, "Use CRR factors exp(±sigma·sqrt(dt))");
  la_cmd->add_option("--crr-dt", la.crr_dt);

  for (auto* sub : {bs_cmd, se_cmd, la_cmd}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    const auto emit = file_emitter(out_dir);
    namespace report = ssp::report;
    if (*arb) return print(report::check_arbitrage(load(model_path), emit));
    if (*pr) return print(report::price(load(model_path), load(claim_path), signed_claim, emit));
    if (*hd) return print(report::hedge(load(model_path), load(claim_path), signed_claim, emit));
    if (*cl) return print(report::classify(load(model_path), load(claim_path), emit));
    if (*nu && check == "transport") {
      if (strategy_path.empty()) throw ssp::StructuralError("--check transport needs --strategy");
      return print(report::numeraire_transport(load(model_path), load(numeraire_path), load(strategy_path)));
    }
    if (*nu) return print(report::numeraire_na(load(model_path), load(numeraire_path), scale, emit));
    if (*bs_cmd) return print_table(report::experiment_bs(bs, seed), csv);
    if (*se_cmd) return print_table(report::experiment_stochexp(se, seed), csv);
    if (*la_cmd) return print_table(report::experiment_lattice(la, seed), csv);
  } catch (const ssp::StructuralError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kBadInput;
  } catch (const ssp::DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}
