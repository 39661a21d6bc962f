#include "pppca/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace pppca {

std::string replicate_csv(const std::vector<ReplicateResult>& results) {
  std::ostringstream out;
  out << "scenario_id,replicate,seed,method,k_hat\n";
  for (const auto& r : results) {
    for (std::size_t i = 0; i < r.methods.size(); ++i) {
      out << r.scenario_id << ',' << r.replicate << ',' << r.seed << ','
          << r.methods[i] << ',';
      if (r.k_hat[i]) out << *r.k_hat[i];
      out << '\n';
    }
  }
  return out.str();
}

std::vector<MethodSummary> summarize_replicates(
    const std::vector<ReplicateResult>& results, std::optional<std::size_t> k_star) {
  std::map<std::string, std::vector<double>> ks;
  std::map<std::string, std::size_t> missing;
  std::map<std::string, double> wall;
  std::vector<std::string> order;

  for (const auto& r : results) {
    for (std::size_t i = 0; i < r.methods.size(); ++i) {
      const auto& m = r.methods[i];
      if (ks.find(m) == ks.end() && missing.find(m) == missing.end())
        order.push_back(m);
      if (r.k_hat[i]) {
        ks[m].push_back(static_cast<double>(*r.k_hat[i]));
      } else {
        ++missing[m];
      }
      wall[m] += r.wall_ms[i];
    }
  }

  std::vector<MethodSummary> out;
  const double total = static_cast<double>(results.size());
  for (const auto& m : order) {
    MethodSummary s;
    s.method = m;
    auto& v = ks[m];
    s.n_ok = v.size();
    s.n_missing = missing.count(m) != 0u ? missing[m] : 0u;
    if (!v.empty()) {
      double sum = 0.0;
      std::size_t correct = 0;
      for (double x : v) {
        sum += x;
        if (k_star && x == static_cast<double>(*k_star)) ++correct;
      }
      s.mean_k = sum / static_cast<double>(v.size());
      std::sort(v.begin(), v.end());
      s.median_k = v.size() % 2 == 1
                       ? v[v.size() / 2]
                       : 0.5 * (v[v.size() / 2 - 1] + v[v.size() / 2]);
      s.proportion_correct = k_star ? static_cast<double>(correct) / total : 0.0;
    }
    s.mean_wall_ms = wall[m] / total;
    out.push_back(std::move(s));
  }
  return out;
}

std::string summary_text(const std::vector<MethodSummary>& summaries,
                         std::optional<std::size_t> k_star) {
  std::ostringstream out;
  char buf[160];
  for (const auto& s : summaries) {
    std::snprintf(buf, sizeof(buf), "%-8s mean_k=%.4g median_k=%.4g", s.method.c_str(),
                  s.mean_k, s.median_k);
    out << buf;
    if (k_star) {
      std::snprintf(buf, sizeof(buf), " proportion_correct=%.4g", s.proportion_correct);
      out << buf;
    }
    std::snprintf(buf, sizeof(buf), " ok=%zu missing=%zu mean_wall_ms=%.4g\n", s.n_ok,
                  s.n_missing, s.mean_wall_ms);
    out << buf;
  }
  return out.str();
}

}  // namespace pppca
