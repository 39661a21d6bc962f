#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pppca/simgen.hpp"

namespace pppca {

// Fixed-order CSV for replicate results: scenario_id,replicate,seed,method,k_hat.
// k_hat is empty for a failed method. Timings are deliberately excluded so the
// bytes depend only on (scenario, seed), not on scheduling.
std::string replicate_csv(const std::vector<ReplicateResult>& results);

struct MethodSummary {
  std::string method;
  std::size_t n_ok = 0;
  std::size_t n_missing = 0;
  double mean_k = 0.0;
  double median_k = 0.0;
  double proportion_correct = 0.0;  // meaningful only when k_star was given
  double mean_wall_ms = 0.0;
};

std::vector<MethodSummary> summarize_replicates(
    const std::vector<ReplicateResult>& results, std::optional<std::size_t> k_star);

std::string summary_text(const std::vector<MethodSummary>& summaries,
                         std::optional<std::size_t> k_star);

}  // namespace pppca
