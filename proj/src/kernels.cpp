#include "pppca/kernels.hpp"

#include "pppca/parallel.hpp"
#include "pppca/rng.hpp"

namespace pppca::kernels {

namespace {

inline double dot(const double* a, const double* b, std::size_t m) {
  double s = 0.0;
  for (std::size_t t = 0; t < m; ++t) s += a[t] * b[t];
  return s;
}

inline void fill_gaussian_column(Matrix& g, std::size_t j, std::uint64_t key) {
  rng::CounterRng stream(rng::substream(key, j));
  for (std::size_t i = 0; i < g.rows(); ++i) g(i, j) = stream.next_gaussian();
}

}  // namespace

Matrix gram_covariance_serial(const Matrix& y) {
  const std::size_t n = y.rows();
  const std::size_t m = y.cols();
  const double inv_m = 1.0 / static_cast<double>(m);
  Matrix s(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double v = dot(y.row(i), y.row(j), m) * inv_m;
      s(i, j) = v;
      s(j, i) = v;
    }
  }
  return s;
}

Matrix gram_covariance_parallel(const Matrix& y, int threads) {
  const std::size_t n = y.rows();
  const std::size_t m = y.cols();
  const double inv_m = 1.0 / static_cast<double>(m);
  Matrix s(n, n);
  // Upper triangle flattened so the load is balanced across rows.
  const std::size_t pairs = n * (n + 1) / 2;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(threads)
#endif
  for (std::size_t p = 0; p < pairs; ++p) {
    // Invert p -> (i, j), i <= j, row-by-row enumeration of the triangle.
    std::size_t i = 0;
    std::size_t rem = p;
    std::size_t row_len = n;
    while (rem >= row_len) {
      rem -= row_len;
      --row_len;
      ++i;
    }
    const std::size_t j = i + rem;
    const double v = dot(y.row(i), y.row(j), m) * inv_m;
    s(i, j) = v;
    s(j, i) = v;
  }
  (void)threads;
  return s;
}

Matrix gram_covariance(const Matrix& y) {
  const int threads = par::max_threads();
  if (threads <= 1) return gram_covariance_serial(y);
  return gram_covariance_parallel(y, threads);
}

Matrix fill_gaussian_serial(std::size_t rows, std::size_t cols, std::uint64_t key) {
  Matrix g(rows, cols);
  for (std::size_t j = 0; j < cols; ++j) fill_gaussian_column(g, j, key);
  return g;
}

Matrix fill_gaussian_parallel(std::size_t rows, std::size_t cols, std::uint64_t key,
                              int threads) {
  Matrix g(rows, cols);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(threads)
#endif
  for (std::size_t j = 0; j < cols; ++j) fill_gaussian_column(g, j, key);
  (void)threads;
  return g;
}

Matrix fill_gaussian(std::size_t rows, std::size_t cols, std::uint64_t key) {
  const int threads = par::max_threads();
  if (threads <= 1) return fill_gaussian_serial(rows, cols, key);
  return fill_gaussian_parallel(rows, cols, key, threads);
}

}  // namespace pppca::kernels
