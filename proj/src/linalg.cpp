#include "pppca/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pppca/errors.hpp"

namespace pppca::linalg {

namespace {

double off_diagonal_norm(const Matrix& a) {
  const std::size_t n = a.rows();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace

EigenDecomposition jacobi_eigh(const Matrix& a_in, int max_sweeps, double tol) {
  if (a_in.rows() != a_in.cols()) throw RangeError("jacobi_eigh: matrix not square");
  const std::size_t n = a_in.rows();
  Matrix a = a_in;
  Matrix v = Matrix::identity(n);

  const double target = tol * static_cast<double>(n);
  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    if (off_diagonal_norm(a) < target) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rotation angle from Golub & Van Loan; the smaller-root choice
        // keeps |theta| <= pi/4 and the iteration stable.
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        const double app = a(p, p);
        const double aqq = a(q, q);
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          if (i != p && i != q) {
            const double aip = a(i, p);
            const double aiq = a(i, q);
            a(i, p) = aip - s * (aiq + tau * aip);
            a(i, q) = aiq + s * (aip - tau * aiq);
            a(p, i) = a(i, p);
            a(q, i) = a(i, q);
          }
          const double vip = v(i, p);
          const double viq = v(i, q);
          v(i, p) = vip - s * (viq + tau * vip);
          v(i, q) = viq + s * (vip - tau * viq);
        }
      }
    }
  }
  if (off_diagonal_norm(a) >= target) {
    throw NumericalError("jacobi_eigh: no convergence after " +
                         std::to_string(max_sweeps) + " sweeps");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

  EigenDecomposition out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  out.sweeps = sweep;
  return out;
}

Matrix householder_q(const Matrix& a_in) {
  if (a_in.rows() != a_in.cols()) throw RangeError("householder_q: matrix not square");
  const std::size_t n = a_in.rows();
  Matrix r = a_in;
  Matrix q = Matrix::identity(n);

  std::vector<double> w(n);
  for (std::size_t k = 0; k < n; ++k) {
    double norm = 0.0;
    for (std::size_t i = k; i < n; ++i) norm += r(i, k) * r(i, k);
    norm = std::sqrt(norm);
    if (norm == 0.0) continue;
    const double alpha = r(k, k) >= 0.0 ? -norm : norm;
    double wnorm2 = 0.0;
    for (std::size_t i = k; i < n; ++i) {
      w[i] = r(i, k) - (i == k ? alpha : 0.0);
      wnorm2 += w[i] * w[i];
    }
    if (wnorm2 == 0.0) continue;
    const double beta = 2.0 / wnorm2;
    for (std::size_t j = k; j < n; ++j) {
      double dotp = 0.0;
      for (std::size_t i = k; i < n; ++i) dotp += w[i] * r(i, j);
      dotp *= beta;
      for (std::size_t i = k; i < n; ++i) r(i, j) -= dotp * w[i];
    }
    for (std::size_t j = 0; j < n; ++j) {
      double dotp = 0.0;
      for (std::size_t i = k; i < n; ++i) dotp += w[i] * q(j, i);
      dotp *= beta;
      for (std::size_t i = k; i < n; ++i) q(j, i) -= dotp * w[i];
    }
  }

  for (std::size_t j = 0; j < n; ++j) {
    if (r(j, j) < 0.0)
      for (std::size_t i = 0; i < n; ++i) q(i, j) = -q(i, j);
  }
  return q;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw RangeError("matmul: shape mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

}  // namespace pppca::linalg
