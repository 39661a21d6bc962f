#include "pppca/baselines.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "pppca/errors.hpp"
#include "pppca/special.hpp"

namespace pppca {

namespace {

const double kNan = std::numeric_limits<double>::quiet_NaN();

std::size_t argmin_path(const std::vector<double>& path, std::size_t k_first) {
  std::size_t best_k = 0;
  double best = kNan;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (std::isnan(path[i])) continue;
    if (best_k == 0 || path[i] < best) {
      best = path[i];
      best_k = k_first + i;
    }
  }
  return best_k;
}

}  // namespace

double free_parameter_count(std::size_t n, std::size_t k) {
  const double nn = static_cast<double>(n);
  const double kk = static_cast<double>(k);
  return nn * kk + 1.0 - kk * (kk - 1.0) / 2.0;
}

EstimateReport ic_select(const SigmaProfile& sp, double m, InformationCriterion kind) {
  const std::size_t n = sp.n();
  const double weight = kind == InformationCriterion::kAic ? 2.0 : std::log(m);

  EstimateReport report;
  report.method = kind == InformationCriterion::kAic ? "aic" : "bic";
  report.k_first = 1;
  std::vector<double> path(n - 1, kNan);
  bool any = false;
  for (std::size_t k = 1; k <= n - 1; ++k) {
    try {
      path[k - 1] = -2.0 * profile_loglik(sp, m, k) + weight * free_parameter_count(n, k);
      any = true;
    } catch (const DomainError&) {
    }
  }
  if (!any) throw DomainError("ic_select: likelihood undefined for every k");
  report.k_hat = argmin_path(path, 1);
  report.diagnostics["criterion"] = std::move(path);
  return report;
}

EstimateReport cumlog_select(const SigmaProfile& sp, std::size_t k_min,
                             CumlogVariant variant) {
  const std::size_t n = sp.n();
  if (k_min < 1) k_min = 1;
  const std::size_t k_max = variant == CumlogVariant::kHead ? n - 1 : n - 2;
  if (k_min > k_max) throw RangeError("cumlog_select: k_min beyond the scanned range");

  EstimateReport report;
  report.method = variant == CumlogVariant::kHead ? "cumlog" : "cumlog-tail";
  report.k_first = k_min;
  std::vector<double> path;
  path.reserve(k_max - k_min + 1);

  if (variant == CumlogVariant::kHead) {
    double prefix_sum = 0.0;
    for (std::size_t i = 1; i < k_min; ++i) prefix_sum += sp.eigenvalue(i);
    for (std::size_t k = k_min; k <= k_max; ++k) {
      prefix_sum += sp.eigenvalue(k);
      const double logs = sp.log_lambda_prefix(k);
      if (std::isnan(logs))
        throw DomainError("cumlog_select: zero eigenvalue in the scanned prefix");
      const double kk = static_cast<double>(k);
      path.push_back(std::log(prefix_sum / kk) - logs / kk);
    }
  } else {
    for (std::size_t k = k_min; k <= k_max; ++k) {
      const std::size_t count = n - k;
      double log_tail = 0.0;
      for (std::size_t i = k + 1; i <= n; ++i) {
        const double lam = sp.eigenvalue(i);
        if (!(lam > 0.0))
          throw DomainError("cumlog_select: zero eigenvalue in the scanned tail");
        log_tail += std::log(lam);
      }
      path.push_back(sp.log_sigma2(k) - log_tail / static_cast<double>(count));
    }
  }

  report.k_hat = argmin_path(path, k_min);
  report.diagnostics["criterion"] = std::move(path);
  return report;
}

EstimateReport vard_select(const SigmaProfile& sp) {
  const std::size_t n = sp.n();
  EstimateReport report;
  report.method = "vard";
  report.k_first = 1;

  std::vector<double> path(n);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    const double lam = sp.eigenvalue(k);
    sum += lam;
    sum_sq += lam * lam;
    const double kk = static_cast<double>(k);
    path[k - 1] = sum_sq / kk - (sum / kk) * (sum / kk);
  }

  std::size_t best_k = 1;
  for (std::size_t k = 2; k <= n - 1; ++k) {
    if (path[k - 1] > path[best_k - 1]) best_k = k;
  }
  report.k_hat = best_k;
  report.diagnostics["criterion"] = std::move(path);
  return report;
}

LawleyStatistic lawley_statistic(const SigmaProfile& sp, double m, std::size_t j,
                                 LawleyVariant variant) {
  const std::size_t n = sp.n();
  if (j < 1 || n - j < 2)
    throw RangeError("lawley_statistic: need j in 1..n-2");

  const std::size_t t = n - j + 1;  // eigenvalues under test
  double tail_sum = 0.0;
  double tail_log = 0.0;
  for (std::size_t i = j; i <= n; ++i) {
    const double lam = sp.eigenvalue(i);
    if (!(lam > 0.0)) throw DomainError("lawley_statistic: non-positive tail eigenvalue");
    tail_sum += lam;
    tail_log += std::log(lam);
  }
  const double tt = static_cast<double>(t);
  const double mean = tail_sum / tt;
  double bracket = tt * std::log(mean) - tail_log;
  if (bracket < 0.0) bracket = 0.0;  // Jensen gap, negative only by round-off

  LawleyStatistic out;
  out.dof = tt * (tt + 1.0) / 2.0 - 1.0;
  if (bracket == 0.0) return out;

  if (variant == LawleyVariant::kClassical) {
    out.statistic = m * bracket;
    return out;
  }
  double correction = 0.0;
  for (std::size_t i = 1; i <= j; ++i) {
    const double d = sp.eigenvalue(i) - mean;
    correction += 1.0 / (d * d);
  }
  const double c = tt - (2.0 * tt + 1.0 + 2.0 / tt) / 6.0 + mean * mean * correction;
  out.statistic = c * bracket;
  return out;
}

EstimateReport lawley_select(const SigmaProfile& sp, double m, double alpha,
                             LawleyVariant variant) {
  const std::size_t n = sp.n();
  if (!(alpha > 0.0)) throw RangeError("lawley_select: alpha must be positive");

  EstimateReport report;
  report.method = "lawley";
  report.k_first = 0;
  auto& stats = report.diagnostics["statistic"];
  auto& pvals = report.diagnostics["p_value"];

  if (alpha >= 1.0) {  // rejects nothing, the first null stands
    report.k_hat = 0;
    return report;
  }

  for (std::size_t q = 0; q + 3 <= n; ++q) {
    const auto s = lawley_statistic(sp, m, q + 1, variant);
    const double p = special::chi2_sf(s.statistic, s.dof);
    stats.push_back(s.statistic);
    pvals.push_back(p);
    const double threshold = special::chi2_quantile(1.0 - alpha, s.dof);
    if (!(s.statistic > threshold)) {
      report.k_hat = q;
      return report;
    }
  }
  report.k_hat = n - 2;  // every equality hypothesis rejected
  return report;
}

}  // namespace pppca
