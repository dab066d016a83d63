#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace compresslab {

struct Tolerances {
  double taylor = 5e-6;
  double theta_extrema = 2e-8;
  double theta0 = 1e-6;
  double moments = 1e-12;
  double ordered_mc = 0.01;
  double disordered_mc = 0.02;
  double convergence_mc = 0.05;
  double inhom_theory = 5e-5;
  double inhom_mc = 0.05;
  double linear_bound = 0.063;
  double density_mass = 1e-2;
  double first_moment = 1e-2;
  double rho_zero = 2e-3;
  double via_g = 1e-3;
  double sigma_log_imag = 1e-5;
  double sigma_other = 2e-4;
  double periodicity = 2e-4;
  double b_residual = 1e-6;
  double theta_agreement = 1e-5;
  double functional = 1e-9;
  double oracle_sigmas = 3.0;
};

// JSON object whose keys are Tolerances field names. Unknown keys,
// non-numeric or non-positive values and malformed JSON raise ConfigError.
Tolerances load_tolerances(const std::filesystem::path& path);
Tolerances parse_tolerances(const std::string& text);
nlohmann::json tolerances_to_json(const Tolerances& tol);

struct AcceptanceOptions {
  Tolerances tol;
  bool quick = false;          // skip the large Monte Carlo criteria (4-7)
  std::vector<int> only;       // run just these criteria when non-empty
  std::uint64_t seed = 2024;
  unsigned replicas_ordered = 8;       // criterion 4, length 2^22
  unsigned replicas_two_step = 8;      // criterion 5, length 2^22
  unsigned replicas_eight_step = 2048; // criterion 6, length 2^24
  unsigned replicas_inhom = 640;       // criterion 7, length 2^24
  unsigned oracle_trials = 100000;     // criterion 12
};

struct CheckResult {
  int id = 0;
  std::string title;
  bool passed = false;
  double seconds = 0.0;
  std::string detail;     // one-line summary of the measured numbers
  nlohmann::json values;  // everything measured, for the report bundle
};

inline constexpr int kCriteriaCount = 13;

// Runs the selected criteria in order; on_result is called as each finishes.
std::vector<CheckResult> run_acceptance(const AcceptanceOptions& options,
                                        const std::function<void(const CheckResult&)>& on_result = {});

// Timings are left out unless asked for, so the bundle is reproducible.
nlohmann::json acceptance_to_json(const std::vector<CheckResult>& results, const AcceptanceOptions& options,
                                  bool with_timing = false);

}  // namespace compresslab
