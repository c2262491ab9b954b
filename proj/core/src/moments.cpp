#include "roughheat/moments.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "roughheat/errors.hpp"
#include "roughheat/specialfn.hpp"

namespace roughheat {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

ModelParams ModelParams::pam(double nu, double lam, int p) { return quasi(nu, lam, 0.0, p); }

ModelParams ModelParams::quasi(double nu, double lam, double varsigma, int p) {
    ModelParams mp;
    mp.nu = nu;
    mp.lam = lam;
    mp.varsigma = varsigma;
    mp.p = p;
    mp.quasilinear = true;
    // quasi-linear growth pins both growth envelopes
    mp.lip_upper = mp.lip_lower = mp.lipschitz_const = std::fabs(lam);
    mp.vbar = mp.vlow = varsigma;
    mp.validate();
    return mp;
}

ModelParams ModelParams::bounds_only(double nu, double lip_upper, double vbar, double lip_lower,
                                     double vlow, double lipschitz_const, int p) {
    ModelParams mp;
    mp.nu = nu;
    mp.quasilinear = false;
    mp.lam = 0.0;
    mp.varsigma = 0.0;
    mp.lip_upper = lip_upper;
    mp.vbar = vbar;
    mp.lip_lower = lip_lower;
    mp.vlow = vlow;
    mp.lipschitz_const = lipschitz_const;
    mp.p = p;
    mp.validate();
    return mp;
}

double ModelParams::a_pv() const {
    if (p == 2) return 1.0;
    return vbar != 0.0 ? std::pow(2.0, (p - 1.0) / p) : std::sqrt(2.0);
}

double ModelParams::z_p() const {
    if (z_p_override > 0.0) return z_p_override;
    return p == 2 ? 1.0 : 2.0 * std::sqrt(static_cast<double>(p));
}

void ModelParams::validate() const {
    if (!(nu > 0.0)) throw config_error("ModelParams: requires nu > 0");
    if (p < 2 || p % 2 != 0) throw std::domain_error("ModelParams: p must be an even integer >= 2");
    if (!(lip_upper > 0.0) || !(lip_lower > 0.0) || !(lipschitz_const > 0.0))
        throw config_error("ModelParams: growth/Lipschitz constants must be positive");
    if (lip_lower > lip_upper * (1.0 + 1e-12))
        throw config_error("ModelParams: lip_lower must not exceed lip_upper");
    if (varsigma < 0.0 || vbar < 0.0 || vlow < 0.0)
        throw config_error("ModelParams: additive noise levels must be >= 0");
}

namespace {

void require_quasilinear(const ModelParams& mp, const char* who) {
    if (!mp.quasilinear)
        throw config_error(std::string(who) +
                           ": exact moments need quasi-linear noise; use pth_moment_upper / "
                           "second_moment_lower for general rho");
}

// f = J0^2 + (J0^2 * K) + vs^2 H at an arbitrary rate/level pair.
double moment_at_rate(double nu, double rate, double vs, const InitialMeasure& mu, double t,
                      double x, const QuadConfig& cfg) {
    const KernelContext ctx(nu, rate);
    if (const auto* l = mu.single_lebesgue())
        return l->scale * l->scale + (l->scale * l->scale + vs * vs) * h_fn(ctx, t);
    if (const auto* a = mu.single_atom()) {
        if (rate == 0.0) {
            const double g = heat_kernel(nu, t, x - a->location);
            return a->mass * a->mass * g * g;
        }
        return a->mass * a->mass * kernel_k(ctx, t, x - a->location) / (rate * rate) +
               vs * vs * h_fn(ctx, t);
    }
    const double j = j0(mu, nu, t, x);
    return j * j + j0_squared_conv_kernel(mu, ctx, t, x, cfg) + vs * vs * h_fn(ctx, t);
}

double log_moment_at_rate(double nu, double rate, double vs, const InitialMeasure& mu, double t,
                          double x, const QuadConfig& cfg) {
    const KernelContext ctx(nu, rate);
    const double lvs = vs > 0.0 ? 2.0 * std::log(vs) + log_h(ctx, t) : kNegInf;
    if (const auto* l = mu.single_lebesgue()) {
        const double c2 = l->scale * l->scale;
        const double la = c2 > 0.0 ? std::log(c2) : kNegInf;
        const double lb = c2 + vs * vs > 0.0 ? std::log(c2 + vs * vs) + log_h(ctx, t) : kNegInf;
        return log_sum_exp(la, lb);
    }
    if (const auto* a = mu.single_atom()) {
        const double lm = a->mass != 0.0 ? 2.0 * std::log(std::fabs(a->mass)) : kNegInf;
        if (rate == 0.0) return lm + 2.0 * log_heat_kernel(nu, t, x - a->location);
        return log_sum_exp(
            lm + log_kernel_k(ctx, t, x - a->location) - 2.0 * std::log(std::fabs(rate)), lvs);
    }
    const double lj2 = 2.0 * log_j0(mu, nu, t, x);
    const double lconv = log_j0_squared_conv_kernel(mu, ctx, t, x, cfg);
    return log_sum_exp({lj2, lconv, lvs});
}

}  // namespace

double second_moment_exact(const ModelParams& mp, const InitialMeasure& mu, double t, double x,
                           const QuadConfig& cfg) {
    mp.validate();
    require_quasilinear(mp, "second_moment_exact");
    if (!(t > 0.0)) throw std::domain_error("second_moment_exact: requires t > 0");
    return moment_at_rate(mp.nu, mp.lam, mp.varsigma, mu, t, x, cfg);
}

double log_second_moment_exact(const ModelParams& mp, const InitialMeasure& mu, double t, double x,
                               const QuadConfig& cfg) {
    mp.validate();
    require_quasilinear(mp, "log_second_moment_exact");
    if (!(t > 0.0)) throw std::domain_error("log_second_moment_exact: requires t > 0");
    return log_moment_at_rate(mp.nu, mp.lam, mp.varsigma, mu, t, x, cfg);
}

double picard_partial_sum(const ModelParams& mp, const InitialMeasure& mu, int n, double t,
                          double x, const QuadConfig& cfg) {
    mp.validate();
    require_quasilinear(mp, "picard_partial_sum");
    if (n < 0) throw std::domain_error("picard_partial_sum: requires n >= 0");
    const KernelContext ctx(mp.nu, mp.lam);
    const double j = j0(mu, mp.nu, t, x);
    double sum = j * j;
    const double vs2 = mp.varsigma * mp.varsigma;
    for (int i = 0; i < n; ++i) {
        sum += j0_squared_conv_ln(mu, ctx, i, t, x, cfg);
        if (vs2 > 0.0) sum += vs2 * eta_n(ctx, i, t);
    }
    return sum;
}

double pth_moment_upper(const ModelParams& mp, const InitialMeasure& mu, double t, double x,
                        const QuadConfig& cfg) {
    mp.validate();
    if (mp.p == 2) return moment_at_rate(mp.nu, mp.lip_upper, mp.vbar, mu, t, x, cfg);
    const double rate = mp.a_pv() * mp.z_p() * mp.lip_upper;
    const KernelContext ctx(mp.nu, rate);
    const double j = j0(mu, mp.nu, t, x);
    return 2.0 * j * j + 2.0 * j0_squared_conv_kernel(mu, ctx, t, x, cfg) +
           mp.vbar * mp.vbar * h_fn(ctx, t);
}

double log_pth_moment_upper(const ModelParams& mp, const InitialMeasure& mu, double t, double x,
                            const QuadConfig& cfg) {
    mp.validate();
    if (mp.p == 2) return log_moment_at_rate(mp.nu, mp.lip_upper, mp.vbar, mu, t, x, cfg);
    const double rate = mp.a_pv() * mp.z_p() * mp.lip_upper;
    const KernelContext ctx(mp.nu, rate);
    const double lj2 = M_LN2 + 2.0 * log_j0(mu, mp.nu, t, x);
    const double lconv = M_LN2 + log_j0_squared_conv_kernel(mu, ctx, t, x, cfg);
    const double lvs = mp.vbar > 0.0 ? 2.0 * std::log(mp.vbar) + log_h(ctx, t) : kNegInf;
    return log_sum_exp({lj2, lconv, lvs});
}

double second_moment_lower(const ModelParams& mp, const InitialMeasure& mu, double t, double x,
                           const QuadConfig& cfg) {
    mp.validate();
    return moment_at_rate(mp.nu, mp.lip_lower, mp.vlow, mu, t, x, cfg);
}

LyapunovBounds lyapunov_bounds(const ModelParams& mp) {
    mp.validate();
    const double p = mp.p;
    const double l4 = std::pow(mp.lip_upper, 4);
    const double lam4 = std::pow(mp.lam, 4);
    return {32.0 * p * p * p * l4 / mp.nu, 8.0 * p * p * p * l4 / mp.nu,
            lam4 * p * (p * p - 1.0) / (24.0 * mp.nu)};
}

namespace {

// Reduced radial integrand of int dy G_nu^2(t-s,x-y) J0^2(s,y) for
// J0 = d/dx G_nu: the y layer collapses to Gaussian moments.
double delta_prime_slice(double nu, double t, double x, double s) {
    const double second_moment_y = nu * s * (t - s) / (2.0 * t) + s * s * x * x / (t * t);
    return heat_kernel(nu / 2.0, t, x) / (4.0 * M_PI * nu * nu * nu) *
           second_moment_y / (s * s * std::sqrt(s * (t - s)));
}

}  // namespace

DeltaPrimeReport delta_prime_divergence_check(double nu, double lam, double t, double x,
                                              std::vector<double> eps_grid,
                                              const QuadConfig& cfg) {
    if (!(nu > 0.0) || lam == 0.0 || !(t > 0.0))
        throw config_error("delta_prime_divergence_check: requires nu > 0, lam != 0, t > 0");
    for (size_t i = 1; i < eps_grid.size(); ++i)
        if (!(eps_grid[i] < eps_grid[i - 1]))
            throw config_error("delta_prime_divergence_check: eps grid must decrease");
    if (eps_grid.empty() || !(eps_grid.front() < t))
        throw config_error("delta_prime_divergence_check: eps grid must lie in (0,t)");

    DeltaPrimeReport rep;
    rep.eps = std::move(eps_grid);
    const double lam2 = lam * lam;
    const auto slice = [&](double s) { return delta_prime_slice(nu, t, x, s); };
    const double mid = 0.5 * t;
    // the (t-s)^{-1/2} endpoint runs through the substitution rule
    const double upper_half =
        integrate_sqrt_singular([&](double w) { return slice(t - w); }, t - mid, cfg);
    for (double eps : rep.eps) {
        const double lower = integrate_adaptive(slice, eps, mid, cfg).value;
        rep.integral.push_back(lam2 * (lower + upper_half));
    }

    rep.monotone_increasing = true;
    for (size_t i = 1; i < rep.integral.size(); ++i)
        if (!(rep.integral[i] > rep.integral[i - 1])) rep.monotone_increasing = false;

    // least-squares slope of log I against log eps
    const size_t n = rep.eps.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        const double lx = std::log(rep.eps[i]);
        const double ly = std::log(rep.integral[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    rep.fitted_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return rep;
}

double delta_contrast_integral(double nu, double lam, double t, double x, double eps,
                               const QuadConfig& cfg) {
    if (!(nu > 0.0) || lam == 0.0 || !(0.0 <= eps && eps < t))
        throw config_error("delta_contrast_integral: requires nu > 0, lam != 0, 0 <= eps < t");
    const KernelContext ctx(nu, lam);
    // lam^2 (G^2 * K/lam^2) = int k_profile(s) G_{nu/2}(t,x) / sqrt(4 pi nu (t-s)) ds
    const double pre = heat_kernel(nu / 2.0, t, x);
    const auto slice = [&](double s) {
        return pre * k_profile(ctx, s) / std::sqrt(4.0 * M_PI * nu * (t - s));
    };
    const double mid = 0.5 * (eps + t);
    const double lower = eps > 0.0
                             ? integrate_adaptive(slice, eps, mid, cfg).value
                             : integrate_sqrt_singular(slice, mid, cfg);
    const double upper =
        integrate_sqrt_singular([&](double w) { return slice(t - w); }, t - mid, cfg);
    return lower + upper;
}

}  // namespace roughheat
