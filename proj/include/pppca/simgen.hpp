#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pppca/baselines.hpp"
#include "pppca/select.hpp"
#include "pppca/spectrum.hpp"

namespace pppca {

// Simulation scenario: spiked covariance with trace-n convention. The first
// k_star squared singular values either come from explicit_d2 or decay
// geometrically with the smallest anchored at d2_min.
struct Scenario {
  std::string id = "scenario";
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t k_star = 0;
  double sigma2 = 0.0;
  double d2_min = 0.0;
  std::vector<double> explicit_d2;

  void validate() const;  // throws InfeasibleScenario
};

// Flat key = value file, '#' comments; explicit_d2 is a comma list.
Scenario load_scenario(const std::string& path);

// Squared singular values d2_i for i = 1..k_star: explicit_d2 if given, else
// d2_i = d2_min * rho^(k_star - i) with rho solved so the total signal
// variance is n (1 - sigma2) to 1e-9.
std::vector<double> scenario_d2(const Scenario& s);

// Population eigenvalues d2_i + sigma2 (i <= k_star) and sigma2 elsewhere.
EigenSpectrum make_population_spectrum(const Scenario& s);

// Haar orthogonal matrix: QR of a standard Gaussian matrix with diag(R) >= 0.
Matrix random_orthogonal(std::size_t n, std::uint64_t seed);

// Y = W Z + eps with W = U diag(d), U the leading k_star columns of a random
// orthogonal matrix, Z and eps standard/scaled Gaussian. Bitwise reproducible
// for a fixed seed at any worker count.
DataMatrix sample_data(const Scenario& s, std::uint64_t seed);

// sample_data followed by the spectrum with standardization disabled.
EigenSpectrum sample_spectrum_only(const Scenario& s, std::uint64_t seed);

struct EstimateOptions {
  std::size_t t_points = 0;  // 0 = default 50 n
  double alpha = 0.05;
  LawleyVariant lawley_variant = LawleyVariant::kAsPrinted;
  std::size_t cumlog_k_min = 1;
  CumlogVariant cumlog_variant = CumlogVariant::kHead;
};

inline const std::vector<std::string>& all_methods() {
  static const std::vector<std::string> kMethods = {"pppca", "aic",  "bic",
                                                    "cumlog", "vard", "lawley"};
  return kMethods;
}

// Runs one named estimator on a spectrum; nullopt when the method fails on
// this input. The tally is filled for pppca only.
std::optional<std::size_t> run_method(const std::string& method,
                                      const EigenSpectrum& spectrum,
                                      const EstimateOptions& opts,
                                      VoteTally* tally_out = nullptr,
                                      EstimateReport* report_out = nullptr);

struct ReplicateResult {
  std::string scenario_id;
  std::size_t replicate = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> methods;
  std::vector<std::optional<std::size_t>> k_hat;  // parallel to methods
  std::vector<double> wall_ms;                    // parallel to methods
};

// R independent replicates; replicate r uses seed base_seed ^ hash(r), so
// scheduling and worker count cannot change any result.
std::vector<ReplicateResult> run_replicates(const Scenario& s,
                                            const std::vector<std::string>& methods,
                                            std::size_t replicates,
                                            std::uint64_t base_seed,
                                            const EstimateOptions& opts = {});

}  // namespace pppca
