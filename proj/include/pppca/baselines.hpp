#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "pppca/ppca.hpp"

namespace pppca {

enum class InformationCriterion { kAic, kBic };
enum class CumlogVariant { kHead, kTail };

// The as-printed variant applies the finite-sample coefficient c to the
// bracketed log-eigenvalue gap; the classical variant multiplies the gap by
// the sample size m instead.
enum class LawleyVariant { kAsPrinted, kClassical };

struct EstimateReport {
  std::string method;
  std::size_t k_hat = 0;   // 0 means isotropic / no structure
  std::size_t k_first = 1; // k of the first diagnostics entry
  std::map<std::string, std::vector<double>> diagnostics;
};

// Free-parameter count of the k-component probabilistic model.
double free_parameter_count(std::size_t n, std::size_t k);

// argmin over k = 1..n-1 of -2 l_p(k) + weight(kind) p(k); ties to smaller k.
// k with an undefined likelihood carry NaN in the criterion path; if every k
// is undefined the DomainError propagates.
EstimateReport ic_select(const SigmaProfile& sp, double m, InformationCriterion kind);

// Jensen gap of the leading k eigenvalues, log(mean) - mean(log). The head
// variant is the printed estimator (degenerate at k=1 for strictly decreasing
// spectra); the tail variant applies the same gap to the trailing block.
EstimateReport cumlog_select(const SigmaProfile& sp, std::size_t k_min = 1,
                             CumlogVariant variant = CumlogVariant::kHead);

// argmax over k = 1..n-1 of the population variance of the first k
// eigenvalues; the diagnostics path extends through k = n.
EstimateReport vard_select(const SigmaProfile& sp);

struct LawleyStatistic {
  double statistic = 0.0;
  double dof = 0.0;
};

// Equality test for the trailing eigenvalue block {lambda_j..lambda_n}
// (t = n-j+1 values): statistic = coeff * { t log(mean) - sum log },
// dof = t(t+1)/2 - 1.
LawleyStatistic lawley_statistic(const SigmaProfile& sp, double m, std::size_t j,
                                 LawleyVariant variant = LawleyVariant::kAsPrinted);

// Sequentially tests q = 0, 1, ... (tail starts at j = q+1) and returns the
// smallest q whose test is not rejected at level alpha; n-2 when every test
// rejects. alpha >= 1 rejects nothing and yields 0.
EstimateReport lawley_select(const SigmaProfile& sp, double m, double alpha = 0.05,
                             LawleyVariant variant = LawleyVariant::kAsPrinted);

}  // namespace pppca
