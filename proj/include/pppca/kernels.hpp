#pragma once

#include <cstdint>

#include "pppca/matrix.hpp"

namespace pppca::kernels {

// S = (1/m) * Y * Y^T for row-major Y (n x m). The parallel variant splits
// work over (i, j) entries; each entry keeps the same left-to-right inner
// accumulation order as the serial one, so results are bitwise identical.
Matrix gram_covariance_serial(const Matrix& y);
Matrix gram_covariance_parallel(const Matrix& y, int threads);
Matrix gram_covariance(const Matrix& y);

// Standard-normal matrix fill. Column j draws from substream(key, j), which
// makes the parallel fill schedule-independent and equal to the serial one.
Matrix fill_gaussian_serial(std::size_t rows, std::size_t cols, std::uint64_t key);
Matrix fill_gaussian_parallel(std::size_t rows, std::size_t cols, std::uint64_t key,
                              int threads);
Matrix fill_gaussian(std::size_t rows, std::size_t cols, std::uint64_t key);

}  // namespace pppca::kernels
