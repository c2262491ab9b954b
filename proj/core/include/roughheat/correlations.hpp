#pragma once

#include <utility>

#include "roughheat/moments.hpp"

namespace roughheat {

// Space-time query pair for E[u(t,x) u(tau,y)], with tau >= t > 0.
struct CorrelationQuery {
    double t = 1.0;
    double x = 0.0;
    double tau = 1.0;
    double y = 0.0;

    void validate() const;
};

// Exact two-point function (quasi-linear noise):
//   J0(t,x) J0(tau,y)
//   + lam^2 int_0^t dr int dz (vs^2 + f(r,z)) G_nu(t-r,x-z) G_nu(tau-r,y-z)
// with f the exact second moment. The z layer is Gaussian-weighted
// quadrature; the vs^2 part of the r integral uses the closed two-kernel
// time integral instead of quadrature.
double two_point_exact(const ModelParams& mp, const InitialMeasure& mu, const CorrelationQuery& q,
                       const QuadConfig& cfg = {});

// Closed form for Lebesgue data, with tbar = (t+tau)/2:
//   1 + (1+vs^2) [ e^{(lam^4 tbar - 2 lam^2 |x-y|)/(4nu)}
//                    Erfc((|x-y| - lam^2 tbar)/(2 sqrt(nu tbar)))
//                  - Erfc(|x-y|/(2 sqrt(nu tbar))) ].
double two_point_lebesgue(const ModelParams& mp, const CorrelationQuery& q);

// Closed form for a unit atom at the origin, equal times only.
double two_point_delta(const ModelParams& mp, const CorrelationQuery& q);

// (lower, upper) sandwich from the growth envelopes (lip_lower, vlow) and
// (lip_upper, vbar).
std::pair<double, double> two_point_bounds(const ModelParams& mp, const InitialMeasure& mu,
                                           const CorrelationQuery& q, const QuadConfig& cfg = {});

// Quadrature of the historical integral form of the Lebesgue equal-time
// correlation (rho(u) = u) minus the corrected closed form; the difference is
// the missing short-time term -Erf(dx / sqrt(4 nu t)).
double bc_lebesgue_discrepancy(double nu, double t, double dx, const QuadConfig& cfg = {});

// Closed time integral int_0^t dr int dz G_nu(t-r,x-z) G_nu(tau-r,y-z).
double double_heat_time_integral(double nu, double t, double x, double tau, double y);

}  // namespace roughheat
