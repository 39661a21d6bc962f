#include "pppca/select.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pppca/errors.hpp"
#include "pppca/parallel.hpp"

namespace pppca {

namespace {

constexpr double kDenominatorFloor = 1e-14;
constexpr double kBisectionRelTol = 1e-10;
constexpr double kBracketPad = 1e-14;

// Anchors below this are indistinguishable from the round-off of an exactly
// tied tail and are treated as degenerate zeros.
constexpr double kAnchorFloor = 1e-12;

double checked_bound(double numerator, double denominator, const char* name,
                     std::size_t k) {
  if (!(std::abs(denominator) >= kDenominatorFloor))
    throw DegenerateBound(std::string(name) + " denominator vanishes at k=" +
                          std::to_string(k));
  const double v = numerator / denominator;
  if (!std::isfinite(v) || !(v > kAnchorFloor))
    throw DegenerateBound(std::string(name) + " is non-finite or non-positive at k=" +
                          std::to_string(k));
  return v;
}

// Worker shared by the serial and parallel assignment kernels; the value for
// one grid point never depends on any other point.
std::int64_t assign_one(const SigmaProfile& sp, double m, double dt) {
  const std::size_t kmax = admissible_k_max(sp.n(), dt);
  if (kmax == 0) return 0;
  std::int64_t best_k = -1;
  double best = 0.0;
  for (std::size_t k = 1; k <= kmax; ++k) {
    const auto v = try_penalized_profile_loglik(sp, m, k, dt);
    if (!v) continue;
    if (best_k < 0 || *v > best) {
      best_k = static_cast<std::int64_t>(k);
      best = *v;
    }
  }
  return best_k;  // -1 when every admissible k failed
}

}  // namespace

double bound_u_b(const SigmaProfile& sp, std::size_t k) {
  const std::size_t n = sp.n();
  if (k < 1 || k > n - 1)
    throw RangeError("bound_u_b: k must be in 1..n-1");
  const double lam_k = sp.eigenvalue(k);
  const double s2k = sp.sigma2(k);
  const double s2k1 = sp.sigma2(k - 1);
  const double numerator = std::log(lam_k / s2k1) +
                           static_cast<double>(n - k) * std::log(s2k / s2k1);
  const double denominator =
      static_cast<double>(n) * (static_cast<double>(k) * sp.log_sigma2(k) -
                                static_cast<double>(k - 1) * sp.log_sigma2(k - 1));
  return checked_bound(numerator, denominator, "u_b", k);
}

double bound_u_a(const SigmaProfile& sp, std::size_t k) {
  const std::size_t n = sp.n();
  if (k < 1 || k > n - 2)
    throw RangeError("bound_u_a: k must be in 1..n-2");
  const double lam_k1 = sp.eigenvalue(k + 1);
  const double s2k = sp.sigma2(k);
  const double s2k1 = sp.sigma2(k + 1);
  const double numerator = -(std::log(lam_k1 / s2k) +
                             static_cast<double>(n - k - 1) * std::log(s2k / s2k1));
  const double denominator =
      static_cast<double>(n) * (static_cast<double>(k + 1) * sp.log_sigma2(k + 1) -
                                static_cast<double>(k) * sp.log_sigma2(k));
  return checked_bound(numerator, denominator, "u_a", k);
}

std::vector<double> build_grid(const SigmaProfile& sp, std::size_t t_points) {
  if (t_points < 2) throw RangeError("build_grid: need at least 2 grid points");
  double hi;
  try {
    hi = bound_u_b(sp, 1);
  } catch (const DegenerateBound&) {
    throw DegenerateSpectrum("build_grid: u_b(1) is degenerate, no usable voting range");
  }

  // The bottom of the voting range is the lower anchor of the largest-k
  // interval, u_a(n-2); starting below it only feeds votes to k = n-1, whose
  // unpenalized likelihood dominates as delta -> 0. When that anchor is
  // degenerate (an exactly tied tail drives every large-k anchor to zero)
  // fall back to a fixed six-decade range under u_b(1).
  double lo = 0.0;
  try {
    lo = bound_u_a(sp, sp.n() - 2);
  } catch (const DegenerateBound&) {
    lo = 1e-6 * hi;
  }
  if (!(lo < hi)) lo = 1e-6 * hi;
  if (!(lo > 0.0) || !(lo < hi))
    throw DegenerateSpectrum("build_grid: voting range is empty");

  const double log_lo = std::log(lo);
  const double log_hi = std::log(hi);
  std::vector<double> grid(t_points);
  const double step = (log_hi - log_lo) / static_cast<double>(t_points - 1);
  for (std::size_t t = 0; t < t_points; ++t)
    grid[t] = std::exp(log_lo + static_cast<double>(t) * step);
  grid.front() = lo;
  grid.back() = hi;
  for (std::size_t t = 1; t < t_points; ++t) {
    if (!(grid[t] > grid[t - 1]))
      throw DegenerateSpectrum("build_grid: grid is not strictly increasing");
  }
  return grid;
}

std::size_t admissible_k_max(std::size_t n, double delta_tilde) {
  if (!(delta_tilde > 0.0)) return n - 1;
  const double bound = static_cast<double>(n) /
                       (1.0 + static_cast<double>(n) * delta_tilde);
  auto admissible = [&](std::size_t k) {
    return delta_tilde < 1.0 / static_cast<double>(k) - 1.0 / static_cast<double>(n);
  };
  std::int64_t k = static_cast<std::int64_t>(std::floor(bound));
  if (k > static_cast<std::int64_t>(n - 1)) k = static_cast<std::int64_t>(n - 1);
  while (k >= 1 && !admissible(static_cast<std::size_t>(k))) --k;
  while (k + 1 <= static_cast<std::int64_t>(n - 1) &&
         admissible(static_cast<std::size_t>(k + 1)))
    ++k;
  return k < 0 ? 0 : static_cast<std::size_t>(k);
}

std::vector<std::int64_t> vote_assign_serial(const SigmaProfile& sp, double m,
                                             const std::vector<double>& grid) {
  std::vector<std::int64_t> out(grid.size());
  for (std::size_t t = 0; t < grid.size(); ++t) out[t] = assign_one(sp, m, grid[t]);
  return out;
}

std::vector<std::int64_t> vote_assign_parallel(const SigmaProfile& sp, double m,
                                               const std::vector<double>& grid,
                                               int threads) {
  std::vector<std::int64_t> out(grid.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(threads)
#endif
  for (std::size_t t = 0; t < grid.size(); ++t) out[t] = assign_one(sp, m, grid[t]);
  (void)threads;
  return out;
}

VoteTally vote(const SigmaProfile& sp, double m, const std::vector<double>& grid) {
  if (grid.empty()) throw RangeError("vote: empty grid");
  const int threads = par::max_threads();
  const auto assigned = threads <= 1 ? vote_assign_serial(sp, m, grid)
                                     : vote_assign_parallel(sp, m, grid, threads);

  VoteTally tally;
  tally.grid = grid;
  for (std::size_t t = 0; t < assigned.size(); ++t) {
    if (assigned[t] > 0) {
      ++tally.counts[static_cast<std::size_t>(assigned[t])];
    } else if (assigned[t] == 0) {
      tally.skipped.push_back(t);
    } else {
      throw DomainError("vote: likelihood undefined for every admissible k at grid point " +
                        std::to_string(t));
    }
  }
  return tally;
}

std::size_t select_k(const VoteTally& tally) {
  if (tally.counts.empty())
    throw EmptyTally("select_k: every grid point was skipped");
  std::size_t best_k = 0;
  std::size_t best = 0;
  for (const auto& [k, c] : tally.counts) {  // ascending k, ties keep the smaller
    if (c > best) {
      best = c;
      best_k = k;
    }
  }
  return best_k;
}

std::optional<std::pair<double, double>> exact_delta_interval(const SigmaProfile& sp,
                                                              double m, std::size_t k) {
  const std::size_t n = sp.n();
  if (k < 2 || k > n - 2)
    throw RangeError("exact_delta_interval: k must be in 2..n-2 (endpoints are one-sided)");

  // Both adjacent differences are monotone on G(k) only; past its upper end
  // they bend back and cross zero a second time, so the bracket must stop
  // there.
  const double monotone_hi = g_interval_upper(sp, k);
  if (!(monotone_hi > 2.0 * kBracketPad)) return std::nullopt;

  auto bisect = [&](std::size_t other_k) -> std::optional<double> {
    auto f = [&](double dt) -> std::optional<double> {
      const auto a = try_penalized_profile_loglik(sp, m, k, dt);
      const auto b = try_penalized_profile_loglik(sp, m, other_k, dt);
      if (!a || !b) return std::nullopt;
      return *a - *b;
    };
    double lo = kBracketPad;
    double hi = monotone_hi - kBracketPad;
    if (!(hi > lo)) return std::nullopt;
    auto flo = f(lo);
    auto fhi = f(hi);
    if (!flo || !fhi) return std::nullopt;
    if (*flo == 0.0) return lo;
    if (*fhi == 0.0) return hi;
    if ((*flo > 0.0) == (*fhi > 0.0)) return std::nullopt;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      const auto fm = f(mid);
      if (!fm) return std::nullopt;
      if ((*fm > 0.0) == (*flo > 0.0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
      if (hi - lo <= kBisectionRelTol * std::max(std::abs(lo), std::abs(hi))) break;
    }
    return 0.5 * (lo + hi);
  };

  const auto a = bisect(k + 1);
  if (!a) return std::nullopt;
  const auto b = bisect(k - 1);
  if (!b) return std::nullopt;
  return std::make_pair(*a, *b);
}

DeltaBounds compute_delta_bounds(const SigmaProfile& sp, double m, std::size_t k,
                                 bool with_exact) {
  DeltaBounds db;
  db.k = k;
  try {
    if (k <= sp.n() - 2) db.u_a = bound_u_a(sp, k);
  } catch (const DegenerateBound&) {
  }
  try {
    db.u_b = bound_u_b(sp, k);
  } catch (const DegenerateBound&) {
  }
  if (with_exact && k >= 2 && k <= sp.n() - 2) {
    if (const auto ab = exact_delta_interval(sp, m, k)) {
      db.a_exact = ab->first;
      db.b_exact = ab->second;
    }
  }
  return db;
}

PppcaEstimate pppca_estimate(const EigenSpectrum& spectrum, double m,
                             std::size_t t_points) {
  SigmaProfile sp(spectrum);
  if (t_points == 0) t_points = 50 * spectrum.n;
  const auto grid = build_grid(sp, t_points);
  PppcaEstimate est;
  est.grid_lo = grid.front();
  est.grid_hi = grid.back();
  est.tally = vote(sp, m, grid);
  est.k = select_k(est.tally);
  return est;
}

}  // namespace pppca
