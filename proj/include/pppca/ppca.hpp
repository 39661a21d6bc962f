#pragma once

#include <optional>
#include <vector>

#include "pppca/spectrum.hpp"

namespace pppca {

// Residual-variance MLE path sigma2_hat(k) = mean of the trailing n-k
// eigenvalues, k = 0..n-1 (k = 0 is the all-noise mean, trace/n). Everything
// the likelihood ops need is precomputed from the spectrum once.
class SigmaProfile {
 public:
  explicit SigmaProfile(EigenSpectrum spectrum);

  const EigenSpectrum& spectrum() const { return spectrum_; }
  std::size_t n() const { return spectrum_.n; }

  double eigenvalue(std::size_t i) const { return spectrum_.eigenvalues[i - 1]; }  // 1-based
  double sigma2(std::size_t k) const { return sigma2_[k]; }        // k in 0..n-1
  double log_sigma2(std::size_t k) const { return log_sigma2_[k]; }

  // Sum of log eigenvalues 1..k; NaN if any of them is zero.
  double log_lambda_prefix(std::size_t k) const { return log_prefix_[k]; }

 private:
  EigenSpectrum spectrum_;
  std::vector<double> sigma2_;
  std::vector<double> log_sigma2_;
  std::vector<double> log_prefix_;
};

// sigma2_hat(k); RangeError outside 1..n-1.
double sigma_hat(const SigmaProfile& sp, std::size_t k);

// Profile log-likelihood of the k-component model,
// -(m/2) [ n log(2 pi) + sum_{i<=k} log lambda_i + (n-k) log sigma2_hat(k) + n ].
double profile_loglik(const SigmaProfile& sp, double m, std::size_t k);

// Penalized residual variance sigma2_hat(k) (n-k) / (n-k - n k dt),
// defined for 0 <= dt < 1/k - 1/n.
double sigma_tilde(const SigmaProfile& sp, std::size_t k, double delta_tilde);

// Penalized profile log-likelihood at scaled tuning parameter dt.
double penalized_profile_loglik(const SigmaProfile& sp, double m, std::size_t k,
                                double delta_tilde);

// d/d(dt) of the penalized profile log-likelihood,
// -(m n k / 2) log{ (n-k - n k dt) / ((n-k) sigma2_hat(k)) }.
double penalized_profile_gradient(const SigmaProfile& sp, double m, std::size_t k,
                                  double delta_tilde);

// Upper end of the interval where the gradient stays negative (its root):
// (1/k - 1/n)(1 - sigma2_hat(k)).
double zero_gradient_delta(const SigmaProfile& sp, std::size_t k);

// Upper end of G(k) = (0, {1/(k+1) - 1/n}{1 - sigma2_hat(k)}).
double g_interval_upper(const SigmaProfile& sp, std::size_t k);

// No-throw evaluation used by grid scans: nullopt where the likelihood is
// undefined or dt is inadmissible for this k.
std::optional<double> try_penalized_profile_loglik(const SigmaProfile& sp, double m,
                                                   std::size_t k,
                                                   double delta_tilde) noexcept;

}  // namespace pppca
