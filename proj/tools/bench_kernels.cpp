// Side-by-side timing of the OpenMP kernels against their serial reference
// implementations, with an equality check on every comparison. Outputs one
// row per (kernel, size) to stdout.

#include <chrono>
#include <cstdio>
#include <cstdint>
#include <string>
#include <vector>

#include "pppca/kernels.hpp"
#include "pppca/parallel.hpp"
#include "pppca/report.hpp"
#include "pppca/select.hpp"
#include "pppca/simgen.hpp"

namespace {

using namespace pppca;
using Clock = std::chrono::steady_clock;

template <typename F>
double time_ms(F&& f, int reps = 3) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = Clock::now();
    f();
    const auto t1 = Clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void row(const std::string& kernel, const std::string& size, double serial_ms,
         double parallel_ms, bool identical) {
  std::printf("%-18s %-22s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx   %s\n",
              kernel.c_str(), size.c_str(), serial_ms, parallel_ms,
              serial_ms / parallel_ms, identical ? "bitwise-equal" : "MISMATCH");
}

Scenario bench_scenario(std::size_t m) {
  Scenario s;
  s.id = "bench";
  s.n = 100;
  s.m = m;
  s.k_star = 10;
  s.sigma2 = 0.5;
  s.d2_min = 0.5;
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  const int threads = argc > 1 ? std::atoi(argv[1]) : par::max_threads();
  std::printf("comparing serial reference vs OpenMP kernels with %d threads\n\n", threads);

  for (const std::size_t m : {2000u, 10000u}) {
    const Matrix y = kernels::fill_gaussian_serial(100, m, 42);
    Matrix a;
    Matrix b;
    const double ts = time_ms([&] { a = kernels::gram_covariance_serial(y); });
    const double tp = time_ms([&] { b = kernels::gram_covariance_parallel(y, threads); });
    row("gram_covariance", "n=100 m=" + std::to_string(m), ts, tp, a == b);
  }

  for (const std::size_t m : {2000u, 10000u}) {
    Matrix a;
    Matrix b;
    const double ts = time_ms([&] { a = kernels::fill_gaussian_serial(110, m, 7); });
    const double tp =
        time_ms([&] { b = kernels::fill_gaussian_parallel(110, m, 7, threads); });
    row("fill_gaussian", "110 x " + std::to_string(m), ts, tp, a == b);
  }

  {
    const Scenario s = bench_scenario(5000);
    const EigenSpectrum spectrum = sample_spectrum_only(s, 42);
    const SigmaProfile sp(spectrum);
    const auto grid = build_grid(sp, 50 * s.n);
    std::vector<std::int64_t> a;
    std::vector<std::int64_t> b;
    const double m = static_cast<double>(spectrum.m);
    const double ts = time_ms([&] { a = vote_assign_serial(sp, m, grid); });
    const double tp = time_ms([&] { b = vote_assign_parallel(sp, m, grid, threads); });
    row("vote_assign", "T=" + std::to_string(grid.size()) + " n=100", ts, tp, a == b);
  }

  {
    const Scenario s = bench_scenario(5000);
    std::vector<ReplicateResult> a;
    std::vector<ReplicateResult> b;
    const double ts = time_ms(
        [&] {
          par::set_threads(1);
          a = run_replicates(s, {"pppca", "bic"}, 6, 42);
        },
        1);
    const double tp = time_ms(
        [&] {
          par::set_threads(threads);
          b = run_replicates(s, {"pppca", "bic"}, 6, 42);
        },
        1);
    par::set_threads(0);
    const bool equal = replicate_csv(a) == replicate_csv(b);
    row("run_replicates", "R=6 n=100 m=5000", ts, tp, equal);
  }

  return 0;
}
