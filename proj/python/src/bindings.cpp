// JSON travels across the boundary as text; the Python package decodes it.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ssp/errors.hpp"
#include "ssp/report.hpp"

namespace py = pybind11;
using ssp::report::Json;

namespace {

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ssp::StructuralError(e.what());
  }
}

std::string dump(const Json& doc) { return doc.dump(); }

py::tuple table(const ssp::report::Table& t) { return py::make_tuple(dump(t.report), t.csv); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact no-arbitrage pricing on finite event trees";

  py::register_exception<ssp::StructuralError>(m, "StructuralError", PyExc_ValueError);
  py::register_exception<ssp::DomainError>(m, "DomainError", PyExc_ArithmeticError);

  const auto& emit = ssp::report::inline_witness;

  m.def("check_arbitrage", [emit](const std::string& model) {
    return dump(ssp::report::check_arbitrage(parse(model), emit));
  });
  m.def("price", [emit](const std::string& model, const std::string& claim, bool signed_claim) {
    return dump(ssp::report::price(parse(model), parse(claim), signed_claim, emit));
  });
  m.def("hedge", [emit](const std::string& model, const std::string& claim, bool signed_claim) {
    return dump(ssp::report::hedge(parse(model), parse(claim), signed_claim, emit));
  });
  m.def("classify", [emit](const std::string& model, const std::string& claim) {
    return dump(ssp::report::classify(parse(model), parse(claim), emit));
  });
  m.def("numeraire_transport", [](const std::string& model, const std::string& numeraire, const std::string& strategy) {
    return dump(ssp::report::numeraire_transport(parse(model), parse(numeraire), parse(strategy)));
  });
  m.def("numeraire_na", [emit](const std::string& model, const std::string& numeraire, const std::string& scale) {
    return dump(ssp::report::numeraire_na(parse(model), parse(numeraire), scale, emit));
  });

  m.def("experiment_bs", [](std::vector<double> gammas, double s0, double mu, double sigma, double maturity,
                            std::size_t paths, const std::string& sampler, std::uint64_t seed) {
    ssp::report::BsOptions o;
    o.gammas = std::move(gammas);
    o.s0 = s0;
    o.mu = mu;
    o.sigma = sigma;
    o.maturity = maturity;
    o.paths = paths;
    o.sampler = sampler;
    return table(ssp::report::experiment_bs(o, seed));
  });
  m.def("experiment_stochexp", [](std::vector<double> alphas, double qv, int fine_steps, int coarse_steps,
                                  std::uint64_t seed) {
    ssp::report::StochexpOptions o;
    o.alphas = std::move(alphas);
    o.params.quadratic_variation = qv;
    o.params.fine_steps = fine_steps;
    o.params.coarse_steps = coarse_steps;
    return table(ssp::report::experiment_stochexp(o, seed));
  });
  m.def("experiment_lattice", [](const std::string& kind, std::vector<int> depths, const std::string& s0,
                                 const std::string& up, const std::string& down, const std::string& strike,
                                 double crr_sigma, double crr_dt, std::uint64_t seed) {
    ssp::report::LatticeOptions o{kind, std::move(depths), s0, up, down, strike, crr_sigma, crr_dt};
    return table(ssp::report::experiment_lattice(o, seed));
  });
  m.attr("DEFAULT_SEED") = ssp::experiments::kDefaultSeed;
}
