#pragma once

#include "roughheat/quadrature.hpp"

namespace roughheat {

// Parameter bundle for the moment kernels. The rate slot `lam` is the
// coefficient whose square multiplies the squared heat kernel in L0; the
// moment bounds re-instantiate it with the growth constants.
struct KernelContext {
    double nu;   // diffusion coefficient
    double lam;  // noise rate
    double b;    // lam^2 / sqrt(4 pi nu)

    KernelContext(double nu_, double lam_);
};

// L0(t,x) = lam^2 G_nu(t,x)^2, with the t <= 0 convention of the heat kernel.
double l0(const KernelContext& ctx, double t, double x);

// B_n(t) = pi^((n+1)/2) b^n t^(n/2) / Gamma((n+1)/2); L_n = L0 * B_n.
double bn(const KernelContext& ctx, int n, double t);
double log_bn(const KernelContext& ctx, int n, double t);
double ln_kernel(const KernelContext& ctx, int n, double t, double x);

// Radial profiles along G_{nu/2}: L_n(t,x) = G_{nu/2}(t,x) * ln_profile(n,t)
// and K(t,x) = G_{nu/2}(t,x) * k_profile(t).
double ln_profile(const KernelContext& ctx, int n, double t);
double k_profile(const KernelContext& ctx, double t);
double log_k_profile(const KernelContext& ctx, double t);

// K(t,x) = G_{nu/2}(t,x) ( lam^2/sqrt(4 pi nu t)
//                        + lam^4/(2 nu) e^{lam^4 t/(4 nu)} Phi(lam^2 sqrt(t/(2 nu))) ),
// the sum of the iterated space-time self-convolutions of L0.
double kernel_k(const KernelContext& ctx, double t, double x);
double log_kernel_k(const KernelContext& ctx, double t, double x);

// H(t) = (1 * K)(t) = 2 e^{lam^4 t/(4 nu)} Phi(lam^2 sqrt(t/(2 nu))) - 1.
double h_fn(const KernelContext& ctx, double t);
double log_h1(const KernelContext& ctx, double t);  // log(1 + H(t))
double log_h(const KernelContext& ctx, double t);   // log H(t); -inf at t = 0

// eta_n(t) = (1 * L_n)(t) = (b sqrt(pi))^{n+1} t^{(n+1)/2} / Gamma((n+3)/2);
// the eta_n sum to H.
double eta_n(const KernelContext& ctx, int n, double t);

// Adaptive truncation of sum_n L_n(t,x): stops once the running term is below
// rel_tol of the partial sum and the term ratio confirms decay; capped at
// n_cap terms.
struct SeriesResult {
    double value = 0.0;
    int n_terms = 0;
    double tail_bound = 0.0;
};
SeriesResult kernel_series(const KernelContext& ctx, double t, double x, double rel_tol = 1e-14,
                           int n_cap = 500);

// Sum of B_n(t) up to n (inclusive); converges to 1 + H(t).
double bn_partial_sum(const KernelContext& ctx, int n_max, double t);

// Time-smeared pair kernel
//   P(t,dz) = int_0^t G_{2nu}(s,dz) k_profile(t-s) ds
//           = lam^2/(4 nu) e^{(lam^4 t - 2 lam^2 |dz|)/(4 nu)}
//                 Erfc((|dz| - lam^2 t)/(2 sqrt(nu t))),
// the z-pair weight in the measure reduction of (J0^2 * K).
double k_pair_integral(const KernelContext& ctx, double t, double dz);
double log_k_pair_integral(const KernelContext& ctx, double t, double dz);

}  // namespace roughheat
