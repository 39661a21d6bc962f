#pragma once

// Independent verification routines for the test suites. Everything here
// deliberately avoids the library's own numerical paths: eigenvalues come
// from the characteristic polynomial, determinants and inverses from plain
// Gaussian elimination, and derivatives from finite differences.

#include <cstdint>
#include <functional>
#include <vector>

#include "pppca/matrix.hpp"
#include "pppca/spectrum.hpp"

namespace oracles {

// Roots of det(S - x I) = 0 for a symmetric 3x3 matrix, descending,
// via the trigonometric solution of the cubic.
std::vector<double> eigenvalues_3x3(const pppca::Matrix& s);

// log|A| and A^-1 by Gaussian elimination with partial pivoting.
double log_det(pppca::Matrix a);
pppca::Matrix invert(pppca::Matrix a);

// Unprofiled Gaussian objective at given model matrices:
//   -(m/2) [ n log(2 pi) + log|C| + tr(C^-1 S) - delta * pen ]
// where C = W W^T + sigma2 I and pen = rank(W) log(sigma2).
double gaussian_objective(const pppca::Matrix& w, double sigma2,
                          const pppca::Matrix& s, double m, double delta);

// Central finite difference with the given step.
double central_difference(const std::function<double(double)>& f, double x, double h);

// Strictly decreasing positive spectrum with trace exactly n, built from
// seeded exponential gaps. Used by the property suites.
std::vector<double> random_decreasing_spectrum(std::size_t n, std::uint64_t seed);

// Spiked-shape spectrum (a few strong components over a decaying bulk),
// strictly decreasing, trace n.
std::vector<double> random_spiked_spectrum(std::size_t n, std::uint64_t seed);

}  // namespace oracles
