#pragma once

#include <cmath>
#include <initializer_list>
#include <span>

namespace roughheat {

// Error functions, evaluated with W. J. Cody's rational Chebyshev
// approximations (Math. Comp. 23, 1969). Relative error is below 1e-15
// over the whole double range; erfcx stays finite for x up to ~2.5e307.
double erf(double x);
double erfc(double x);
double erfcx(double x);  // exp(x^2) * erfc(x), overflow-safe for large x

// log(erfc(x)), stable for large positive x.
double log_erfc(double x);

// Standard normal CDF and its logarithm. NaN input raises std::domain_error.
double std_normal_cdf(double x);
double log_normal_cdf(double x);

// Standard normal density.
double std_normal_pdf(double x);

// log(a+b) given la = log a, lb = log b for a,b >= 0 (either may be -inf).
double log_sum_exp(double la, double lb);
double log_sum_exp(std::span<const double> ls);
double log_sum_exp(std::initializer_list<double> ls);

// log(Phi(b) - Phi(a)) for a < b, stable in both tails.
double log_phi_diff(double a, double b);

// The composite exp(c) * Phi(d), kept in the log domain so that factors like
// exp(lam^4 t / (4 nu)) * Phi(...) stay representable far past exp overflow.
// The value is always positive, so only log_value is stored.
struct ScaledExpPhi {
    double log_value;

    static ScaledExpPhi make(double c, double d) { return {c + log_normal_cdf(d)}; }
    double value() const { return std::exp(log_value); }
};

// Gaussian heat kernel G_nu(t,x) = exp(-x^2/(2 nu t)) / sqrt(2 pi nu t).
// By convention evaluates to exactly 0 for t <= 0; nu <= 0 or NaN arguments
// raise std::domain_error.
double heat_kernel(double nu, double t, double x);
double log_heat_kernel(double nu, double t, double x);  // requires t > 0

// Smoothed two-sided exponential
//   E_{a,beta}(x) = exp(-beta x) Phi((a beta - x)/sqrt(a))
//                 + exp(+beta x) Phi((a beta + x)/sqrt(a)),
// the heat-semigroup mollification of exp(beta |x|). Requires a > 0.
double smooth_exp(double a, double beta, double x);
double log_smooth_exp(double a, double beta, double x);
double smooth_exp_dx(double a, double beta, double x);  // d/dx closed form

}  // namespace roughheat
