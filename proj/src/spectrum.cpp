#include "pppca/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>

#include "pppca/csv.hpp"
#include "pppca/errors.hpp"
#include "pppca/kernels.hpp"
#include "pppca/linalg.hpp"
#include "pppca/special.hpp"

namespace pppca {

namespace {

constexpr double kZeroClamp = 1e-12;

void check_shape(std::size_t n, std::size_t m) {
  if (n < 3 || m < 2) {
    throw ShapeError("need at least 3 units and 2 features, got n=" +
                     std::to_string(n) + ", m=" + std::to_string(m));
  }
}

std::vector<double> column_ranks(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;  // average 1-based rank
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

EigenSpectrum EigenSpectrum::from_values(std::vector<double> values, std::size_t m) {
  const std::size_t n = values.size();
  if (n < 2) throw ShapeError("spectrum needs at least 2 eigenvalues");
  double trace = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(values[i]) || values[i] < 0.0)
      throw DomainError("eigenvalues must be finite and non-negative");
    if (i > 0 && values[i] > values[i - 1] + 1e-12)
      throw DomainError("eigenvalues must be sorted descending");
    trace += values[i];
  }
  if (std::abs(trace - static_cast<double>(n)) > 1e-8 * static_cast<double>(n))
    throw DomainError("eigenvalue trace must equal n (trace-n convention)");
  EigenSpectrum s;
  s.eigenvalues = std::move(values);
  s.n = n;
  s.m = m;
  return s;
}

DataMatrix load_matrix(const std::string& path, TableFormat format,
                       Orientation orientation) {
  const char sep = format == TableFormat::kCsv ? ',' : '\t';
  auto cells = csv::read_table(path, sep);

  // Header row: every cell past a possible corner label fails numeric parse
  // and none looks like a missing-value token (those must stay data errors).
  auto is_label_row = [](const std::vector<std::string>& row, std::size_t from) {
    bool any = false;
    for (std::size_t j = from; j < row.size(); ++j) {
      if (csv::is_na_token(row[j])) return false;
      if (csv::parses_as_number(row[j])) return false;
      any = true;
    }
    return any;
  };

  bool header_col = false;
  {
    bool any = false;
    bool all_nonnum = true;
    for (std::size_t i = 1; i < cells.size(); ++i) {
      const std::string& c = cells[i][0];
      if (csv::is_na_token(c) || csv::parses_as_number(c)) {
        all_nonnum = false;
        break;
      }
      any = true;
    }
    header_col = any && all_nonnum && cells[0].size() > 1;
  }
  const bool header_row = cells.size() > 1 && is_label_row(cells[0], header_col ? 1 : 0);

  const std::size_t r0 = header_row ? 1 : 0;
  const std::size_t c0 = header_col ? 1 : 0;
  if (cells.size() <= r0 || cells[0].size() <= c0)
    throw ParseError("no numeric data after label detection");

  const std::size_t rows = cells.size() - r0;
  const std::size_t cols = cells[0].size() - c0;
  Matrix values(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      values(i, j) = csv::parse_cell(cells[r0 + i][c0 + j], r0 + i + 1, c0 + j + 1);

  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  if (header_row)
    for (std::size_t j = c0; j < cells[0].size(); ++j) col_labels.push_back(cells[0][j]);
  if (header_col)
    for (std::size_t i = r0; i < cells.size(); ++i) row_labels.push_back(cells[i][0]);

  DataMatrix d;
  if (orientation == Orientation::kUnitsAsRows) {
    d.values = std::move(values);
    d.unit_labels = std::move(row_labels);
    d.feature_labels = std::move(col_labels);
  } else {
    d.values = values.transposed();
    d.unit_labels = std::move(col_labels);
    d.feature_labels = std::move(row_labels);
  }
  check_shape(d.n(), d.m());
  return d;
}

DataMatrix standardize_features(const DataMatrix& d, const StandardizeOptions& opts) {
  const std::size_t n = d.n();
  const std::size_t m = d.m();
  check_shape(n, m);

  std::vector<std::size_t> keep;
  keep.reserve(m);
  Matrix out(n, m);
  std::vector<double> col(n);

  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < n; ++i) col[i] = d.values(i, j);

    double mean = 0.0;
    for (double v : col) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : col) ss += (v - mean) * (v - mean);
    const double var = ss / static_cast<double>(n - 1);

    if (var <= 0.0) {
      if (opts.drop_constant_features) continue;
      throw DegenerateFeature("feature " + std::to_string(j + 1) +
                              " is constant across units");
    }

    const std::size_t jj = keep.size();
    if (opts.mode == StandardizeMode::kZScore) {
      const double inv_sd = 1.0 / std::sqrt(var);
      for (std::size_t i = 0; i < n; ++i) out(i, jj) = (col[i] - mean) * inv_sd;
    } else {
      // Blom normal scores on average ranks.
      const auto ranks = column_ranks(col);
      const double denom = static_cast<double>(n) + 0.25;
      for (std::size_t i = 0; i < n; ++i)
        out(i, jj) = special::normal_quantile((ranks[i] - 0.375) / denom);
    }
    keep.push_back(j);
  }

  if (keep.size() < 2)
    throw DegenerateFeature("fewer than 2 non-constant features remain");

  DataMatrix r;
  r.values = Matrix(n, keep.size());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t jj = 0; jj < keep.size(); ++jj) r.values(i, jj) = out(i, jj);
  r.unit_labels = d.unit_labels;
  if (!d.feature_labels.empty())
    for (std::size_t jj : keep) r.feature_labels.push_back(d.feature_labels[jj]);
  return r;
}

EigenSpectrum sample_spectrum(const DataMatrix& d, const SpectrumOptions& opts) {
  const DataMatrix* src = &d;
  DataMatrix standardized;
  if (opts.standardize) {
    standardized = standardize_features(d, opts.standardize_options);
    src = &standardized;
  }
  const std::size_t n = src->n();
  const std::size_t m = src->m();
  check_shape(n, m);
  if (m < n) {
    std::cerr << "pppca: warning: m < n (" << m << " < " << n
              << "); trailing eigenvalues are zero and k is limited by the data rank\n";
  }

  // Center each unit row, model mean is zero per unit.
  Matrix y = src->values;
  for (std::size_t i = 0; i < n; ++i) {
    double mean = 0.0;
    const double* r = y.row(i);
    for (std::size_t j = 0; j < m; ++j) mean += r[j];
    mean /= static_cast<double>(m);
    double* w = y.row(i);
    for (std::size_t j = 0; j < m; ++j) w[j] -= mean;
  }

  Matrix s = kernels::gram_covariance(y);
  double trace = 0.0;
  for (std::size_t i = 0; i < n; ++i) trace += s(i, i);
  if (!(trace > 0.0) || !std::isfinite(trace))
    throw NumericalError("covariance trace is not positive");
  const double scale = static_cast<double>(n) / trace;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s(i, j) *= scale;

  auto eig = linalg::jacobi_eigh(s);
  for (double& v : eig.values) {
    if (v < kZeroClamp) v = 0.0;
  }

  EigenSpectrum out;
  out.eigenvalues = std::move(eig.values);
  out.n = n;
  out.m = m;
  return out;
}

}  // namespace pppca
