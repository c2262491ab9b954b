#include "roughheat/kernels.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "roughheat/errors.hpp"
#include "roughheat/specialfn.hpp"

namespace roughheat {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kLogPi = 1.1447298858494001741;
}  // namespace

KernelContext::KernelContext(double nu_, double lam_) : nu(nu_), lam(lam_) {
    if (!(nu > 0.0)) throw config_error("KernelContext: requires nu > 0");
    b = lam * lam / std::sqrt(4.0 * M_PI * nu);
}

double l0(const KernelContext& ctx, double t, double x) {
    if (t <= 0.0) return 0.0;
    const double g = heat_kernel(ctx.nu, t, x);
    return ctx.lam * ctx.lam * g * g;
}

double log_bn(const KernelContext& ctx, int n, double t) {
    if (n < 0) throw std::domain_error("bn: requires n >= 0");
    if (n == 0) return 0.0;  // B_0 = sqrt(pi)/Gamma(1/2) = 1
    if (ctx.b == 0.0) return kNegInf;
    return 0.5 * (n + 1) * kLogPi + n * std::log(ctx.b) + 0.5 * n * std::log(t) -
           std::lgamma(0.5 * (n + 1));
}

double bn(const KernelContext& ctx, int n, double t) { return std::exp(log_bn(ctx, n, t)); }

double ln_kernel(const KernelContext& ctx, int n, double t, double x) {
    if (t <= 0.0) return 0.0;
    return l0(ctx, t, x) * bn(ctx, n, t);
}

double ln_profile(const KernelContext& ctx, int n, double t) {
    if (ctx.b == 0.0) return 0.0;
    // (b sqrt(pi))^{n+1} t^{(n-1)/2} / Gamma((n+1)/2)
    return std::exp(0.5 * (n + 1) * kLogPi + (n + 1) * std::log(ctx.b) +
                    0.5 * (n - 1) * std::log(t) - std::lgamma(0.5 * (n + 1)));
}

double k_profile(const KernelContext& ctx, double t) {
    if (!(t > 0.0)) throw std::domain_error("k_profile: requires t > 0");
    const double lam2 = ctx.lam * ctx.lam;
    const double c = lam2 * lam2 * t / (4.0 * ctx.nu);
    const double d = lam2 * std::sqrt(t / (2.0 * ctx.nu));
    return lam2 / std::sqrt(4.0 * M_PI * ctx.nu * t) +
           lam2 * lam2 / (2.0 * ctx.nu) * std::exp(c) * std_normal_cdf(d);
}

double log_k_profile(const KernelContext& ctx, double t) {
    if (!(t > 0.0)) throw std::domain_error("log_k_profile: requires t > 0");
    if (ctx.lam == 0.0) return kNegInf;
    const double lam2 = ctx.lam * ctx.lam;
    const double c = lam2 * lam2 * t / (4.0 * ctx.nu);
    const double d = lam2 * std::sqrt(t / (2.0 * ctx.nu));
    const double l_free = std::log(lam2) - 0.5 * std::log(4.0 * M_PI * ctx.nu * t);
    const double l_exp = std::log(lam2 * lam2 / (2.0 * ctx.nu)) + ScaledExpPhi::make(c, d).log_value;
    return log_sum_exp(l_free, l_exp);
}

double kernel_k(const KernelContext& ctx, double t, double x) {
    if (t <= 0.0) return 0.0;
    if (ctx.lam == 0.0) return 0.0;
    return heat_kernel(ctx.nu / 2.0, t, x) * k_profile(ctx, t);
}

double log_kernel_k(const KernelContext& ctx, double t, double x) {
    if (!(t > 0.0) || ctx.lam == 0.0) return kNegInf;
    return log_heat_kernel(ctx.nu / 2.0, t, x) + log_k_profile(ctx, t);
}

double log_h1(const KernelContext& ctx, double t) {
    if (!(t >= 0.0)) throw std::domain_error("h_fn: requires t >= 0");
    const double lam2 = ctx.lam * ctx.lam;
    const double c = lam2 * lam2 * t / (4.0 * ctx.nu);
    const double d = lam2 * std::sqrt(t / (2.0 * ctx.nu));
    return M_LN2 + ScaledExpPhi::make(c, d).log_value;
}

double h_fn(const KernelContext& ctx, double t) {
    if (t == 0.0) return 0.0;
    return std::expm1(log_h1(ctx, t));
}

double log_h(const KernelContext& ctx, double t) {
    if (t == 0.0 || ctx.lam == 0.0) return kNegInf;
    const double lh1 = log_h1(ctx, t);
    return lh1 + std::log1p(-std::exp(-lh1));
}

double eta_n(const KernelContext& ctx, int n, double t) {
    if (ctx.b == 0.0 || t <= 0.0) return 0.0;
    return std::exp(0.5 * (n + 1) * (kLogPi + 2.0 * std::log(ctx.b) + std::log(t)) -
                    std::lgamma(0.5 * (n + 3)));
}

double bn_partial_sum(const KernelContext& ctx, int n_max, double t) {
    double s = 0.0;
    for (int n = 0; n <= n_max; ++n) s += bn(ctx, n, t);
    return s;
}

SeriesResult kernel_series(const KernelContext& ctx, double t, double x, double rel_tol,
                           int n_cap) {
    SeriesResult res;
    if (t <= 0.0 || ctx.lam == 0.0) return res;

    double sum_b = 0.0;
    double prev = 0.0;
    int n = 0;
    for (; n <= n_cap; ++n) {
        const double term = bn(ctx, n, t);
        sum_b += term;
        // Decay sets in once b sqrt(pi t) Gamma(n/2)/Gamma((n+1)/2) < 1.
        const bool decaying = n > 0 && term < prev;
        if (decaying && term < rel_tol * sum_b) {
            const double q = term / prev;
            res.tail_bound = (q < 1.0) ? l0(ctx, t, x) * term * q / (1.0 - q)
                                       : std::numeric_limits<double>::infinity();
            ++n;
            break;
        }
        prev = term;
    }
    res.n_terms = n;
    res.value = l0(ctx, t, x) * sum_b;
    return res;
}

double k_pair_integral(const KernelContext& ctx, double t, double dz) {
    return std::exp(log_k_pair_integral(ctx, t, dz));
}

double log_k_pair_integral(const KernelContext& ctx, double t, double dz) {
    if (!(t > 0.0)) throw std::domain_error("k_pair_integral: requires t > 0");
    if (ctx.lam == 0.0) return kNegInf;
    const double lam2 = ctx.lam * ctx.lam;
    const double d = std::fabs(dz);
    const double z = (d - lam2 * t) / (2.0 * std::sqrt(ctx.nu * t));
    return std::log(lam2 / (4.0 * ctx.nu)) + (lam2 * lam2 * t - 2.0 * lam2 * d) / (4.0 * ctx.nu) +
           log_erfc(z);
}

}  // namespace roughheat
