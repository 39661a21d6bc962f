#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "pppca/ppca.hpp"

namespace pppca {

// Closed-form tuning-parameter anchors for candidate dimension k. u_a/u_b are
// the linearized (Vieta) roots of the adjacent penalized log-likelihood
// differences; a_exact/b_exact are bisection roots of the same differences.
struct DeltaBounds {
  std::size_t k = 0;
  std::optional<double> u_a;
  std::optional<double> u_b;
  std::optional<double> a_exact;
  std::optional<double> b_exact;
};

struct VoteTally {
  std::map<std::size_t, std::size_t> counts;  // k -> number of grid points won
  std::vector<double> grid;                   // the delta values used
  std::vector<std::size_t> skipped;           // grid indices with no admissible k
};

// Anchor of the upper interval end for k: root of the linearized
// l_p(k; d) - l_p(k-1; d) difference. Defined for k = 1..n-1; k = 1 uses
// sigma2_hat(0) = trace/n. Throws DegenerateBound when the denominator
// vanishes or the value is non-finite/non-positive.
double bound_u_b(const SigmaProfile& sp, std::size_t k);

// Conservative anchor of the lower interval end for k (an upper bound for
// a_k), from the linearized l_p(k; d) - l_p(k+1; d) difference. k = 1..n-2.
double bound_u_a(const SigmaProfile& sp, std::size_t k);

// T strictly increasing, log-equispaced delta values spanning the voting
// range. The top is u_b(1); the bottom is the smallest finite positive u_a(k)
// or 1e-6 * u_b(1), whichever is smaller (tie-degenerate spectra drive every
// large-k u_a to zero, and the floor keeps the k* region covered).
std::vector<double> build_grid(const SigmaProfile& sp, std::size_t t_points);

// Largest k in 1..n-1 with delta < 1/k - 1/n; 0 when none.
std::size_t admissible_k_max(std::size_t n, double delta_tilde);

// Per-point maximizers of the penalized profile log-likelihood over the
// admissible k range: entry t is the winning k, 0 if no k is admissible, or
// -1 if every admissible k failed to evaluate. Serial and OpenMP variants
// produce bitwise-identical output.
std::vector<std::int64_t> vote_assign_serial(const SigmaProfile& sp, double m,
                                             const std::vector<double>& grid);
std::vector<std::int64_t> vote_assign_parallel(const SigmaProfile& sp, double m,
                                               const std::vector<double>& grid,
                                               int threads);

// Tallies the maximizer of l_p(k; delta_t) over each grid point (ties go to
// the smaller k). Throws DomainError only if some grid point has admissible
// candidates and all of them fail.
VoteTally vote(const SigmaProfile& sp, double m, const std::vector<double>& grid);

// Mode of the tally; ties toward smaller k. EmptyTally when nothing counted.
std::size_t select_k(const VoteTally& tally);

// Bisection roots of l_p(k;d) - l_p(k+1;d) (a) and l_p(k;d) - l_p(k-1;d) (b)
// on the monotone region, to 1e-10 relative. nullopt = no sign change, the
// interval for this k is empty. k must be in 2..n-2.
std::optional<std::pair<double, double>> exact_delta_interval(const SigmaProfile& sp,
                                                              double m, std::size_t k);

// Bounds for one k with optional exact refinement; missing pieces stay unset
// instead of throwing.
DeltaBounds compute_delta_bounds(const SigmaProfile& sp, double m, std::size_t k,
                                 bool with_exact);

struct PppcaEstimate {
  std::size_t k = 0;
  VoteTally tally;
  double grid_lo = 0.0;
  double grid_hi = 0.0;
};

// Default end-to-end estimator: grid of 50*n points unless overridden.
PppcaEstimate pppca_estimate(const EigenSpectrum& spectrum, double m,
                             std::size_t t_points = 0);

}  // namespace pppca
