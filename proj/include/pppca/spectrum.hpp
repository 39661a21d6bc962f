#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pppca/matrix.hpp"

namespace pppca {

enum class TableFormat { kCsv, kTsv };
enum class Orientation { kUnitsAsRows, kUnitsAsColumns };
enum class StandardizeMode { kZScore, kRankInverseNormal };

// n sample units along rows, m features along columns, labels optional.
struct DataMatrix {
  Matrix values;  // n x m
  std::vector<std::string> unit_labels;     // empty or length n
  std::vector<std::string> feature_labels;  // empty or length m

  std::size_t n() const { return values.rows(); }
  std::size_t m() const { return values.cols(); }
};

// Descending sample eigenvalues with trace normalized to n.
struct EigenSpectrum {
  std::vector<double> eigenvalues;
  std::size_t n = 0;  // sample units
  std::size_t m = 0;  // features behind the covariance

  // Validates ordering, non-negativity and the trace-n convention.
  static EigenSpectrum from_values(std::vector<double> values, std::size_t m);
};

struct StandardizeOptions {
  StandardizeMode mode = StandardizeMode::kZScore;
  bool drop_constant_features = false;
};

struct SpectrumOptions {
  bool standardize = true;  // per-feature transform before the covariance
  StandardizeOptions standardize_options;
};

// Loads a rectangular numeric table and orients it to units-as-rows. A single
// leading row/column of non-numeric labels is taken as labels; NA-like cells
// inside the numeric block are rejected.
DataMatrix load_matrix(const std::string& path, TableFormat format,
                       Orientation orientation);

// Per-feature transform across the n units: z-score (sample-variance
// divisor n-1) or rank-based inverse-normal scores. Constant features throw
// DegenerateFeature unless the drop policy is on.
DataMatrix standardize_features(const DataMatrix& d,
                                const StandardizeOptions& opts = {});

// Standardizes (unless disabled), centers each unit row, forms the n x n
// covariance of the transposed data with divisor m, rescales it to trace n,
// and returns the descending eigenvalues. Values below 1e-12 clamp to 0.
EigenSpectrum sample_spectrum(const DataMatrix& d, const SpectrumOptions& opts = {});

}  // namespace pppca
