#pragma once

#include <vector>

#include "roughheat/initial_data.hpp"
#include "roughheat/quadrature.hpp"

namespace roughheat {

// Coefficient bundle for the noise term. Quasi-linear mode means
// |rho(u)|^2 = lam^2 (varsigma^2 + u^2) exactly, in which case second moments
// are exact; otherwise only the growth/Lipschitz constants are used and the
// moment routines produce bounds.
struct ModelParams {
    double nu = 1.0;        // diffusion coefficient
    double lam = 1.0;       // noise rate (quasi-linear)
    double varsigma = 0.0;  // additive noise level (quasi-linear)

    double lip_upper = 1.0;        // L_rho: |rho(u)|^2 <= L^2 (vbar^2 + u^2)
    double vbar = 0.0;             // additive level in the upper growth bound
    double lip_lower = 1.0;        // l_rho: |rho(u)|^2 >= l^2 (vlow^2 + u^2)
    double vlow = 0.0;             // additive level in the lower growth bound
    double lipschitz_const = 1.0;  // Lipschitz constant of rho

    int p = 2;  // moment order (even)
    bool quasilinear = true;
    double z_p_override = 0.0;  // 0: use z_2 = 1 and z_p = 2 sqrt(p)

    static ModelParams pam(double nu, double lam, int p = 2);
    static ModelParams quasi(double nu, double lam, double varsigma, int p = 2);
    static ModelParams bounds_only(double nu, double lip_upper, double vbar, double lip_lower,
                                   double vlow, double lipschitz_const, int p = 2);

    double a_pv() const;  // moment-splitting constant: 1, sqrt(2) or 2^((p-1)/p)
    double z_p() const;   // BDG constant: z_2 = 1, otherwise 2 sqrt(p) unless overridden
    void validate() const;
};

// E[u(t,x)^2] = J0^2 + (J0^2 * K) + varsigma^2 H(t), exact in quasi-linear
// mode. Specializes to c^2 + (c^2+vs^2) H(t) for Lebesgue(c) and to
// m^2 K(t,x-x0)/lam^2 + vs^2 H(t) for a single atom.
double second_moment_exact(const ModelParams& mp, const InitialMeasure& mu, double t, double x,
                           const QuadConfig& cfg = {});
double log_second_moment_exact(const ModelParams& mp, const InitialMeasure& mu, double t, double x,
                               const QuadConfig& cfg = {});

// n-step Picard iterate of the second moment:
//   J0^2 + sum_{i<n} ( (J0^2 * L_i) + varsigma^2 eta_i ).
double picard_partial_sum(const ModelParams& mp, const InitialMeasure& mu, int n, double t,
                          double x, const QuadConfig& cfg = {});

// Upper bound on ||u(t,x)||_p^2 for even p >= 2. (Raise to p/2 for a bound on
// E|u|^p.) Uses the rate L_rho for p = 2 and a_pv z_p L_rho for p > 2.
double pth_moment_upper(const ModelParams& mp, const InitialMeasure& mu, double t, double x,
                        const QuadConfig& cfg = {});
double log_pth_moment_upper(const ModelParams& mp, const InitialMeasure& mu, double t, double x,
                            const QuadConfig& cfg = {});

// Lower bound on E[u(t,x)^2] at rate lip_lower.
double second_moment_lower(const ModelParams& mp, const InitialMeasure& mu, double t, double x,
                           const QuadConfig& cfg = {});

// Moment Lyapunov-exponent bounds for constant initial data, and the exact
// linear-case value lam^4 p (p^2-1) / (24 nu).
struct LyapunovBounds {
    double upper_general;  // 2^5 p^3 L^4 / nu
    double upper_vbar0;    // 2^3 p^3 L^4 / nu (additive level zero)
    double exact_pam_m_p;  // lam^4 p (p^2-1) / (24 nu)
};
LyapunovBounds lyapunov_bounds(const ModelParams& mp);

// Divergence demonstration for initial data delta'_0: evaluates
//   I(eps) = lam^2 int_eps^t ds int dy G_nu^2(t-s, x-y) J0^2(s,y),
// with J0(s,y) = -y/(nu s) G_nu(s,y), on a decreasing eps grid and fits the
// growth exponent of I(eps) ~ eps^alpha (alpha = -1/2 for the leading term).
struct DeltaPrimeReport {
    std::vector<double> eps;
    std::vector<double> integral;
    double fitted_exponent = 0.0;
    bool monotone_increasing = false;
};
DeltaPrimeReport delta_prime_divergence_check(double nu, double lam, double t, double x,
                                              std::vector<double> eps_grid,
                                              const QuadConfig& cfg = {});

// Contrast case: same truncated integral with delta_0 data and the exact
// second moment K/lam^2 in place of J0^2; converges to (K - L0)/lam^2.
double delta_contrast_integral(double nu, double lam, double t, double x, double eps,
                               const QuadConfig& cfg = {});

}  // namespace roughheat
