#include "roughheat/correlations.hpp"

#include <cmath>
#include <stdexcept>

#include "roughheat/errors.hpp"
#include "roughheat/kernels.hpp"
#include "roughheat/specialfn.hpp"
#include "windows.hpp"

namespace roughheat {

void CorrelationQuery::validate() const {
    if (!(t > 0.0) || !(tau >= t))
        throw config_error("CorrelationQuery: requires tau >= t > 0");
    if (!std::isfinite(x) || !std::isfinite(y))
        throw config_error("CorrelationQuery: requires finite (x,y)");
}

namespace {

// e^{(lam^4 T - 2 lam^2 D)/(4 nu)} Erfc((D - lam^2 T)/(2 sqrt(nu T))) without
// overflow: for nonnegative Erfc argument z the product collapses to
// erfcx(z) e^{-D^2/(4 nu T)}.
double scaled_exp_erfc(double nu, double lam, double T, double D) {
    const double lam2 = lam * lam;
    const double z = (D - lam2 * T) / (2.0 * std::sqrt(nu * T));
    const double gauss = std::exp(-D * D / (4.0 * nu * T));
    if (z >= 0.0) return erfcx(z) * gauss;
    const double a = (lam2 * lam2 * T - 2.0 * lam2 * D) / (4.0 * nu);
    return 2.0 * std::exp(a) - erfcx(-z) * gauss;
}

}  // namespace

double double_heat_time_integral(double nu, double t, double x, double tau, double y) {
    const double d = std::fabs(x - y);
    const double dt = tau - t;
    // Phi(d / sqrt(nu dt)) with the Phi(d/0) = 1 convention at equal times.
    const double phi_gap = dt > 0.0 ? std_normal_cdf(d / std::sqrt(nu * dt)) : 1.0;
    const double phi_sum = std_normal_cdf(d / std::sqrt(nu * (tau + t)));
    double v = d / nu * (phi_sum - phi_gap) + (tau + t) * heat_kernel(nu, tau + t, d);
    if (dt > 0.0) v -= dt * heat_kernel(nu, dt, d);
    return v;
}

namespace {

// lam^2 int_0^t dr int dz (vs^2 + f(r,z)) G_nu(t-r,x-z) G_nu(tau-r,y-z) at an
// arbitrary (rate, vs) pair; f is the moment function at those constants.
double correlation_integral(double nu, double rate, double vs, const InitialMeasure& mu,
                            const CorrelationQuery& q, const QuadConfig& cfg) {
    const double lam2 = rate * rate;
    if (lam2 == 0.0) return 0.0;

    const ModelParams fmp = ModelParams::quasi(nu, rate, vs);
    const double growth = [&] {
        double g = 0.0;
        for (const auto& c : mu.components())
            if (const auto* e = std::get_if<ExpDensityComponent>(&c))
                g = std::max(g, 2.0 * std::fabs(e->rate));
        return g;
    }();
    std::vector<double> atom_centers;
    for (const auto& c : mu.components())
        if (const auto* a = std::get_if<AtomComponent>(&c)) atom_centers.push_back(a->location);

    const auto slice = [&](double r) {
        const double t1 = q.t - r;
        const double t2 = q.tau - r;
        const double var = nu * t1 * t2 / (t1 + t2);
        const double sigma = std::sqrt(var);
        const double mean = (t2 * q.x + t1 * q.y) / (t1 + t2);
        // Atom data concentrates f(r,.) into width-sqrt(nu r) needles as
        // r -> 0; give each its own window so they are never missed.
        std::vector<detail::Window> ws = {{mean - 12.0 * sigma - growth * var,
                                           mean + 12.0 * sigma + growth * var}};
        const double needle = 40.0 * std::sqrt(nu * r);
        for (double c : atom_centers) ws.push_back({c - needle, c + needle});
        const auto f = [&](double z) {
            const double u = (z - mean) / sigma;
            return second_moment_exact(fmp, mu, r, z, cfg) * std_normal_pdf(u) / sigma;
        };
        const double avg = detail::integrate_over_windows(f, ws, cfg);
        return avg * heat_kernel(nu, t1 + t2, q.x - q.y);
    };

    // 1/sqrt singularities can sit at both ends: at r -> t for equal times and
    // at r -> 0 for atom-like data.
    const double mid = 0.5 * q.t;
    const double low = integrate_sqrt_singular(slice, mid, cfg);
    const double high =
        integrate_sqrt_singular([&](double w) { return slice(q.t - w); }, q.t - mid, cfg);

    return lam2 * ((low + high) + vs * vs * double_heat_time_integral(nu, q.t, q.x, q.tau, q.y));
}

}  // namespace

double two_point_exact(const ModelParams& mp, const InitialMeasure& mu, const CorrelationQuery& q,
                       const QuadConfig& cfg) {
    mp.validate();
    q.validate();
    if (!mp.quasilinear)
        throw config_error("two_point_exact: requires quasi-linear noise; use two_point_bounds");
    mu.validate();
    const double jj = j0(mu, mp.nu, q.t, q.x) * j0(mu, mp.nu, q.tau, q.y);
    if (mp.lam == 0.0) return jj;
    return jj + correlation_integral(mp.nu, mp.lam, mp.varsigma, mu, q, cfg);
}

std::pair<double, double> two_point_bounds(const ModelParams& mp, const InitialMeasure& mu,
                                           const CorrelationQuery& q, const QuadConfig& cfg) {
    mp.validate();
    q.validate();
    mu.validate();
    const double jj = j0(mu, mp.nu, q.t, q.x) * j0(mu, mp.nu, q.tau, q.y);
    const double lo = jj + correlation_integral(mp.nu, mp.lip_lower, mp.vlow, mu, q, cfg);
    const double hi = jj + correlation_integral(mp.nu, mp.lip_upper, mp.vbar, mu, q, cfg);
    return {lo, hi};
}

double two_point_lebesgue(const ModelParams& mp, const CorrelationQuery& q) {
    mp.validate();
    q.validate();
    if (!mp.quasilinear) throw config_error("two_point_lebesgue: requires quasi-linear noise");
    if (mp.lam == 0.0) return 1.0;
    const double tbar = 0.5 * (q.t + q.tau);
    const double d = std::fabs(q.x - q.y);
    const double vs2 = mp.varsigma * mp.varsigma;
    const double se = scaled_exp_erfc(mp.nu, mp.lam, tbar, d);
    return 1.0 + (1.0 + vs2) * (se - erfc(d / (2.0 * std::sqrt(mp.nu * tbar))));
}

double two_point_delta(const ModelParams& mp, const CorrelationQuery& q) {
    mp.validate();
    q.validate();
    if (!mp.quasilinear) throw config_error("two_point_delta: requires quasi-linear noise");
    if (q.tau != q.t)
        throw config_error("two_point_delta: closed form is equal-time only; use two_point_exact");
    const double nu = mp.nu;
    const double t = q.t;
    const double d = std::fabs(q.x - q.y);
    const double vs2 = mp.varsigma * mp.varsigma;
    const double gg = heat_kernel(nu, t, q.x) * heat_kernel(nu, t, q.y);
    if (mp.lam == 0.0) return gg;
    const double se = scaled_exp_erfc(nu, mp.lam, t, d);
    const double mid = mp.lam * mp.lam / (4.0 * nu) * heat_kernel(nu / 2.0, t, 0.5 * (q.x + q.y));
    return gg - vs2 * erfc(d / (2.0 * std::sqrt(nu * t))) + (mid + vs2) * se;
}

double bc_lebesgue_discrepancy(double nu, double t, double dx, const QuadConfig& cfg) {
    if (!(nu > 0.0) || !(t > 0.0) || !(dx >= 0.0))
        throw config_error("bc_lebesgue_discrepancy: requires nu > 0, t > 0, dx >= 0");

    double integral;
    if (dx == 0.0) {
        // the integrand carries a factor dx; the historical formula evaluates
        // to the diagonal closed form exactly
        integral = scaled_exp_erfc(nu, 1.0, t, 0.0);
    } else {
        const auto f = [&](double s) {
            const double expo = -dx * dx / (4.0 * nu * s) + (t - s) / (4.0 * nu);
            if (expo < -700.0) return 0.0;
            return dx / std::sqrt(M_PI * nu * s * s * s) * std::exp(expo) *
                   std_normal_cdf(std::sqrt((t - s) / (2.0 * nu)));
        };
        integral = integrate_adaptive(f, 0.0, t, cfg).value;
    }

    ModelParams mp = ModelParams::pam(nu, 1.0);
    const CorrelationQuery q{t, 0.0, t, dx};
    return integral - two_point_lebesgue(mp, q);
}

}  // namespace roughheat
