#pragma once

namespace pppca::special {

// Regularized lower/upper incomplete gamma P(a, x), Q(a, x), series +
// continued fraction, abs error around 1e-14 for the ranges used here.
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// Chi-squared distribution with dof degrees of freedom.
double chi2_cdf(double x, double dof);
double chi2_sf(double x, double dof);            // upper tail
double chi2_quantile(double p, double dof);      // inverse CDF, p in [0, 1)

// Standard normal quantile (Acklam's rational approximation plus one Halley
// refinement against erfc; good to ~1e-14).
double normal_quantile(double p);

}  // namespace pppca::special
