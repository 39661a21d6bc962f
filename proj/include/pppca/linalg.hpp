#pragma once

#include <vector>

#include "pppca/matrix.hpp"

namespace pppca::linalg {

struct EigenDecomposition {
  std::vector<double> values;  // descending
  Matrix vectors;              // column i pairs with values[i]
  int sweeps = 0;
};

// Cyclic Jacobi rotations for a symmetric matrix. Jacobi is preferred here
// over tridiagonalization because it keeps high relative accuracy on the
// small eigenvalues, which downstream code feeds into logs. Converges when
// the off-diagonal Frobenius norm drops below tol * n; throws NumericalError
// after max_sweeps otherwise.
EigenDecomposition jacobi_eigh(const Matrix& a, int max_sweeps = 100,
                               double tol = 1e-12);

// Q factor of a Householder QR with the sign convention diag(R) >= 0, so the
// map from the input to Q is unique (and Haar-distributed for Gaussian input).
Matrix householder_q(const Matrix& a);

// Dense helpers used by small fixtures.
Matrix matmul(const Matrix& a, const Matrix& b);
double max_abs_diff(const Matrix& a, const Matrix& b);

}  // namespace pppca::linalg
