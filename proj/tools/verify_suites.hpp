#pragma once

// The verification pipeline behind `coxrep verify`, plus the JSON
// shapes shared by the other subcommands.  Each suite runs
// independently and reports (claim, witness, margin) rows; failures
// never abort the remaining suites.

#include <cstdint>
#include <string>
#include <vector>

#include "coxrep/gns.hpp"
#include "coxrep/multiplier.hpp"
#include "coxrep/presets.hpp"
#include "json.hpp"

namespace coxrep::cli {

struct VerifyConfig {
  Preset preset;
  int radius = 3;
  std::vector<double> r_values = {0.5, 0.8};
  int arg_steps = 16;
  int trials = 200;
  std::uint64_t seed = 42;
};

struct SuiteResult {
  std::string name;
  bool pass = false;
  nlohmann::json details;
  double seconds = 0.0;
};

std::vector<SuiteResult> run_verify(const VerifyConfig& config);

nlohmann::json verify_report(const VerifyConfig& config, const std::vector<SuiteResult>& suites);

// Shared serialization helpers.
nlohmann::json kappa_estimate_json(const KappaEstimate& est);
nlohmann::json norm_sweep_json(const NormSweepResult& result);
nlohmann::json mu_certificate_json(const MuCertificate& cert);
nlohmann::json mu_prime_certificate_json(const MuPrimeCertificate& cert);

}  // namespace coxrep::cli
