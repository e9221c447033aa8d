#pragma once

#include <span>

namespace familial {

// Natural log of the gamma function for x > 0 (Lanczos, g = 7, nine terms).
double ln_gamma(double x);

// Regularized incomplete beta I_x(a, b), a, b > 0, x in [0, 1].
double reg_inc_beta(double a, double b, double x);

// Regularized lower / upper incomplete gamma P(a, x), Q(a, x); a > 0, x >= 0.
double reg_lower_inc_gamma(double a, double x);
double reg_upper_inc_gamma(double a, double x);

// Student t distribution function with df > 0 degrees of freedom.
double t_cdf(double t, double df);
// P(|T| >= |t|).
double t_two_sided_p(double t, double df);

double chi2_cdf(double x, double df);
// Upper tail 1 - chi2_cdf, computed without cancellation.
double chi2_sf(double x, double df);

enum class SpecialFunction { kLnGamma, kRegIncBeta, kTCdf, kChi2Cdf };

// Dispatches on kind: kLnGamma(x), kRegIncBeta(a, b, x), kTCdf(t, df),
// kChi2Cdf(x, df). Wrong arity or domain throws std::invalid_argument.
double special_function(SpecialFunction kind, std::span<const double> args);

}  // namespace familial
