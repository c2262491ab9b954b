#pragma once

#include <functional>

namespace roughheat {

struct QuadConfig {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    int max_subdivisions = 2000;
};

struct QuadResult {
    double value = 0.0;
    double err_estimate = 0.0;
    int subdivisions = 0;
};

using Integrand = std::function<double(double)>;

// Adaptive Gauss-Kronrod 15-point integration over [a,b] with bisection of
// the worst panel. Throws accuracy_error (carrying the best estimate) if the
// requested tolerance is not reached within max_subdivisions panels.
QuadResult integrate_adaptive(const Integrand& f, double a, double b, const QuadConfig& cfg = {});

// Integral of f over (0,t] where f may carry an integrable 1/sqrt(s)
// singularity at s=0. The substitution s = u^2 absorbs the weight; panel
// refinement alone is never relied on for the endpoint.
double integrate_sqrt_singular(const Integrand& f, double t, const QuadConfig& cfg = {});

// Integral of f(z) against the N(mean, variance) density over the whole line,
// truncated at mean +/- (12 sigma + growth_rate * variance). `growth_rate`
// declares |f| <= C exp(growth_rate |z|); the correction shifts the
// truncation enough to cover the displaced mode of the product.
// Throws accuracy_error when the boundary contribution estimate is not
// negligible at the requested tolerance.
double integrate_gaussian_weighted(const Integrand& f, double mean, double variance,
                                   const QuadConfig& cfg = {}, double growth_rate = 0.0);

// log of integral of exp(log_f) over [a,b]; max-shifted so the integrand can
// live at exp-overflowing scales. Returns -inf for an identically -inf log_f.
double integrate_log_adaptive(const Integrand& log_f, double a, double b,
                              const QuadConfig& cfg = {});

// Numerical check of the three heat-kernel increment estimates
//   int_0^t dr int dz [G(t-r,x-z) - G(t-r,y-z)]^2            <= C1 |x-y| / nu
//   int_0^s dr int dz [G(t-r,x-z) - G(s-r,x-z)]^2            <= C2 sqrt(t-s)/sqrt(nu)
//   int_s^t dr int dz G(t-r,x-z)^2                           <= C3 sqrt(t-s)/sqrt(nu)
// with the sharp constants C1 = 1, C2 = (sqrt(2)-1)/sqrt(pi), C3 = 1/sqrt(pi).
struct HeatIncrementReport {
    double lhs_space = 0.0, bound_space = 0.0;
    double lhs_time_overlap = 0.0, bound_time_overlap = 0.0;
    double lhs_time_tail = 0.0, bound_time_tail = 0.0;
    bool ok = false;
};

HeatIncrementReport heat_increment_bounds_check(double nu, double t, double s, double x, double y,
                                                const QuadConfig& cfg = {});

}  // namespace roughheat
