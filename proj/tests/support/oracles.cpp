#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pppca/rng.hpp"

namespace oracles {

using pppca::Matrix;

std::vector<double> eigenvalues_3x3(const Matrix& s) {
  if (s.rows() != 3 || s.cols() != 3) throw std::invalid_argument("need 3x3");
  // det(S - xI) = -x^3 + c2 x^2 + c1 x + c0
  const double a = s(0, 0), b = s(1, 1), c = s(2, 2);
  const double d = s(0, 1), e = s(0, 2), f = s(1, 2);
  const double c2 = a + b + c;
  const double c1 = -(a * b + a * c + b * c - d * d - e * e - f * f);
  const double c0 = a * b * c + 2.0 * d * e * f - a * f * f - b * e * e - c * d * d;

  // x^3 - c2 x^2 - c1 x - c0 = 0; depressed cubic t^3 + pt + q with x = t + c2/3.
  const double p = -c1 - c2 * c2 / 3.0;
  const double q = -c0 - c2 * (2.0 * c2 * c2 + 9.0 * c1) / 27.0;
  const double shift = c2 / 3.0;

  std::vector<double> roots;
  const double disc = 4.0 * p * p * p + 27.0 * q * q;
  if (std::abs(p) < 1e-14 && std::abs(q) < 1e-14) {
    roots = {shift, shift, shift};
  } else if (disc <= 1e-12) {
    // Three real roots (symmetric matrices always land here up to round-off).
    const double r = std::sqrt(-p * p * p / 27.0);
    double cosphi = -q / (2.0 * r);
    cosphi = std::clamp(cosphi, -1.0, 1.0);
    const double phi = std::acos(cosphi);
    const double mag = 2.0 * std::sqrt(-p / 3.0);
    for (int k = 0; k < 3; ++k)
      roots.push_back(mag * std::cos((phi + 2.0 * M_PI * k) / 3.0) + shift);
  } else {
    throw std::runtime_error("eigenvalues_3x3: complex roots for a symmetric input");
  }
  std::sort(roots.rbegin(), roots.rend());
  return roots;
}

namespace {

// Returns the row-echelon pivots' log product and applies the same ops to inv.
void eliminate(Matrix& a, Matrix* inv, double* log_det_out) {
  const std::size_t n = a.rows();
  double logdet = 0.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    if (a(piv, col) == 0.0) throw std::runtime_error("singular matrix");
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        if (inv) std::swap((*inv)(piv, j), (*inv)(col, j));
      }
    }
    const double pivot = a(col, col);
    if (pivot <= 0.0 && log_det_out)
      throw std::runtime_error("log_det: pivot not positive (matrix not SPD)");
    logdet += std::log(std::abs(pivot));
    const double inv_pivot = 1.0 / pivot;
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) *= inv_pivot;
      if (inv) (*inv)(col, j) *= inv_pivot;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double factor = a(r, col);
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= factor * a(col, j);
        if (inv) (*inv)(r, j) -= factor * (*inv)(col, j);
      }
    }
  }
  if (log_det_out) *log_det_out = logdet;
}

}  // namespace

double log_det(Matrix a) {
  double v = 0.0;
  eliminate(a, nullptr, &v);
  return v;
}

Matrix invert(Matrix a) {
  Matrix inv = Matrix::identity(a.rows());
  eliminate(a, &inv, nullptr);
  return inv;
}

double gaussian_objective(const Matrix& w, double sigma2, const Matrix& s, double m,
                          double delta) {
  const std::size_t n = s.rows();
  const std::size_t k = w.cols();
  Matrix c(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double v = 0.0;
      for (std::size_t t = 0; t < k; ++t) v += w(i, t) * w(j, t);
      c(i, j) = v + (i == j ? sigma2 : 0.0);
    }
  }
  const double logdet = log_det(c);
  const Matrix cinv = invert(c);
  double trace = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < n; ++t) trace += cinv(i, t) * s(t, i);
  const double pen = static_cast<double>(k) * std::log(sigma2);
  const double n_log_2pi =
      static_cast<double>(n) * 1.8378770664093454835606594728112;
  return -0.5 * m * (n_log_2pi + logdet + trace - delta * pen);
}

double central_difference(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

std::vector<double> random_decreasing_spectrum(std::size_t n, std::uint64_t seed) {
  pppca::rng::CounterRng r(seed);
  std::vector<double> v(n);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += 0.05 + -std::log(r.next_unit());  // exponential gaps keep order strict
    v[i] = acc;
  }
  std::sort(v.rbegin(), v.rend());
  double sum = 0.0;
  for (double x : v) sum += x;
  const double scale = static_cast<double>(n) / sum;
  for (double& x : v) x *= scale;
  return v;
}

std::vector<double> random_spiked_spectrum(std::size_t n, std::uint64_t seed) {
  pppca::rng::CounterRng r(seed);
  const std::size_t spikes = 2 + static_cast<std::size_t>(r.next_u64() % (n / 3 + 1));
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double base = 0.2 + 0.6 * r.next_unit();
    const double boost =
        i < spikes ? (4.0 + 10.0 * r.next_unit()) * std::exp(-0.4 * static_cast<double>(i))
                   : 0.0;
    v[i] = base + boost + 1e-3 * static_cast<double>(n - i);
  }
  std::sort(v.rbegin(), v.rend());
  for (std::size_t i = 1; i < n; ++i) {
    if (v[i] >= v[i - 1]) v[i] = v[i - 1] * (1.0 - 1e-9);
  }
  double sum = 0.0;
  for (double x : v) sum += x;
  const double scale = static_cast<double>(n) / sum;
  for (double& x : v) x *= scale;
  return v;
}

}  // namespace oracles
