#include "pppca/ppca.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "pppca/errors.hpp"

namespace pppca {

namespace {

constexpr double kLog2Pi = 1.8378770664093454835606594728112;
const double kNan = std::numeric_limits<double>::quiet_NaN();

void check_k(const SigmaProfile& sp, std::size_t k) {
  if (k < 1 || k > sp.n() - 1)
    throw RangeError("k must be in 1..n-1, got " + std::to_string(k));
}

// n - k - n k dt; positive iff dt < 1/k - 1/n.
double shrunk_count(std::size_t n, std::size_t k, double dt) {
  return static_cast<double>(n - k) - static_cast<double>(n) * static_cast<double>(k) * dt;
}

}  // namespace

SigmaProfile::SigmaProfile(EigenSpectrum spectrum) : spectrum_(std::move(spectrum)) {
  const std::size_t n = spectrum_.n;
  const auto& lam = spectrum_.eigenvalues;

  // Suffix sums keep the recursion lambda_k = (n-k+1) s2(k-1) - (n-k) s2(k)
  // exact to rounding.
  std::vector<double> tail(n + 1, 0.0);
  for (std::size_t i = n; i-- > 0;) tail[i] = lam[i] + tail[i + 1];

  sigma2_.resize(n);
  log_sigma2_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    sigma2_[k] = tail[k] / static_cast<double>(n - k);
    log_sigma2_[k] = sigma2_[k] > 0.0 ? std::log(sigma2_[k]) : kNan;
  }

  log_prefix_.resize(n);
  double acc = 0.0;
  bool dead = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (lam[i] <= 0.0) dead = true;
    acc += dead ? 0.0 : std::log(lam[i]);
    log_prefix_[i] = dead ? kNan : acc;
  }
}

double sigma_hat(const SigmaProfile& sp, std::size_t k) {
  check_k(sp, k);
  return sp.sigma2(k);
}

double profile_loglik(const SigmaProfile& sp, double m, std::size_t k) {
  check_k(sp, k);
  const double n = static_cast<double>(sp.n());
  const double logsum = sp.log_lambda_prefix(k);
  const double ls2 = sp.log_sigma2(k);
  if (std::isnan(logsum) || std::isnan(ls2))
    throw DomainError("profile_loglik: zero eigenvalue in the first k or zero sigma2(k)");
  return -0.5 * m * (n * kLog2Pi + logsum + (n - static_cast<double>(k)) * ls2 + n);
}

double sigma_tilde(const SigmaProfile& sp, std::size_t k, double delta_tilde) {
  check_k(sp, k);
  if (delta_tilde < 0.0)
    throw RangeError("sigma_tilde: delta_tilde must be >= 0");
  const double u = shrunk_count(sp.n(), k, delta_tilde);
  if (!(u > 0.0))
    throw RangeError("sigma_tilde: delta_tilde >= 1/k - 1/n, estimator undefined");
  return sp.sigma2(k) * static_cast<double>(sp.n() - k) / u;
}

double penalized_profile_loglik(const SigmaProfile& sp, double m, std::size_t k,
                                double delta_tilde) {
  const double base = profile_loglik(sp, m, k);
  if (delta_tilde < 0.0)
    throw RangeError("penalized_profile_loglik: delta_tilde must be >= 0");
  const double n = static_cast<double>(sp.n());
  const double kk = static_cast<double>(k);
  const double u = shrunk_count(sp.n(), k, delta_tilde);
  if (!(u > 0.0))
    throw RangeError("penalized_profile_loglik: delta_tilde >= 1/k - 1/n");
  const double nk = n - kk;
  const double penalty =
      u * std::log(nk / u) - delta_tilde * n * kk * (sp.log_sigma2(k) + 1.0);
  return base - 0.5 * m * penalty;
}

double penalized_profile_gradient(const SigmaProfile& sp, double m, std::size_t k,
                                  double delta_tilde) {
  check_k(sp, k);
  if (!(delta_tilde > 0.0))
    throw RangeError("penalized_profile_gradient: delta_tilde must be > 0");
  const double u = shrunk_count(sp.n(), k, delta_tilde);
  if (!(u > 0.0))
    throw RangeError("penalized_profile_gradient: delta_tilde >= 1/k - 1/n");
  const double s2 = sp.sigma2(k);
  if (!(s2 > 0.0)) throw DomainError("penalized_profile_gradient: sigma2(k) is zero");
  const double n = static_cast<double>(sp.n());
  const double kk = static_cast<double>(k);
  return -0.5 * m * n * kk * std::log(u / (static_cast<double>(sp.n() - k) * s2));
}

double zero_gradient_delta(const SigmaProfile& sp, std::size_t k) {
  check_k(sp, k);
  const double n = static_cast<double>(sp.n());
  return (1.0 / static_cast<double>(k) - 1.0 / n) * (1.0 - sp.sigma2(k));
}

double g_interval_upper(const SigmaProfile& sp, std::size_t k) {
  check_k(sp, k);
  const double n = static_cast<double>(sp.n());
  return (1.0 / static_cast<double>(k + 1) - 1.0 / n) * (1.0 - sp.sigma2(k));
}

std::optional<double> try_penalized_profile_loglik(const SigmaProfile& sp, double m,
                                                   std::size_t k,
                                                   double delta_tilde) noexcept {
  if (k < 1 || k > sp.n() - 1 || delta_tilde < 0.0) return std::nullopt;
  const double logsum = sp.log_lambda_prefix(k);
  const double ls2 = sp.log_sigma2(k);
  if (std::isnan(logsum) || std::isnan(ls2)) return std::nullopt;
  const double u = shrunk_count(sp.n(), k, delta_tilde);
  if (!(u > 0.0)) return std::nullopt;

  const double n = static_cast<double>(sp.n());
  const double kk = static_cast<double>(k);
  const double nk = n - kk;
  const double base = -0.5 * m * (n * kLog2Pi + logsum + nk * ls2 + n);
  const double penalty = u * std::log(nk / u) - delta_tilde * n * kk * (ls2 + 1.0);
  return base - 0.5 * m * penalty;
}

}  // namespace pppca
