#include "roughheat/identities.hpp"

#include <cmath>
#include <random>

#include "roughheat/correlations.hpp"
#include "roughheat/kernels.hpp"
#include "roughheat/moments.hpp"
#include "roughheat/specialfn.hpp"
#include "windows.hpp"

namespace roughheat {

namespace {

double rel_err(double got, double want) {
    const double scale = std::max({std::fabs(got), std::fabs(want), 1e-300});
    return std::fabs(got - want) / scale;
}

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// --- individual identities -------------------------------------------------

// pi int_0^t e^{pi b^2 u} Phi(sqrt(2 pi b^2 u)) du
//   = e^{pi b^2 t} Phi(sqrt(2 pi b^2 t))/b^2 - 1/(2 b^2) - sqrt(t)/b
double check_exp_phi_antiderivative(Rng& rng, const QuadConfig& cfg) {
    const double b = uniform(rng, 0.2, 1.4);
    const double t = uniform(rng, 0.2, 3.0);
    const double pb2 = M_PI * b * b;
    const auto f = [&](double u) { return std::exp(pb2 * u) * std_normal_cdf(std::sqrt(2.0 * pb2 * u)); };
    const double lhs = M_PI * integrate_adaptive(f, 0.0, t, cfg).value;
    const double rhs = std::exp(pb2 * t) * std_normal_cdf(std::sqrt(2.0 * pb2 * t)) / (b * b) -
                       0.5 / (b * b) - std::sqrt(t) / b;
    return rel_err(lhs, rhs);
}

// G_nu^2(t,x) = G_{nu/2}(t,x)/sqrt(4 pi nu t)  and the two-kernel product rule.
double check_kernel_product_rules(Rng& rng, const QuadConfig&) {
    const double nu = uniform(rng, 0.3, 3.0);
    const double t = uniform(rng, 0.1, 3.0);
    const double s = uniform(rng, 0.1, 3.0);
    const double x = uniform(rng, -2.5, 2.5);
    const double y = uniform(rng, -2.5, 2.5);
    const double g = heat_kernel(nu, t, x);
    const double e1 = rel_err(g * g, heat_kernel(nu / 2.0, t, x) / std::sqrt(4.0 * M_PI * nu * t));
    const double lhs = heat_kernel(nu, t, x) * heat_kernel(nu, s, y);
    const double rhs = heat_kernel(nu, t * s / (t + s), (s * x + t * y) / (t + s)) *
                       heat_kernel(nu, t + s, x - y);
    return std::max(e1, rel_err(lhs, rhs));
}

// int_0^t (H(r)+1) G_{2nu}(t-r,x) dr
//   = ( e^{(lam^4 t - 2 lam^2 |x|)/(4nu)} Erfc((|x|-lam^2 t)/(2 sqrt(nu t)))
//       - Erfc(|x|/(2 sqrt(nu t))) ) / lam^2
double check_h_against_kernel(Rng& rng, const QuadConfig& cfg) {
    const double nu = uniform(rng, 0.3, 2.0);
    const double lam = uniform(rng, 0.4, 1.6);
    const double t = uniform(rng, 0.2, 2.0);
    const double x = uniform(rng, -2.0, 2.0);
    const KernelContext ctx(nu, lam);
    const auto f = [&](double r) { return (h_fn(ctx, r) + 1.0) * heat_kernel(2.0 * nu, t - r, x); };
    // kernel age w = t - r; 1/sqrt(w) endpoint at x = 0
    const double lhs =
        integrate_sqrt_singular([&](double w) { return f(t - w); }, t, cfg);
    const double lam2 = lam * lam;
    const double ax = std::fabs(x);
    const double rhs = (std::exp((lam2 * lam2 * t - 2.0 * lam2 * ax) / (4.0 * nu)) *
                            erfc((ax - lam2 * t) / (2.0 * std::sqrt(nu * t))) -
                        erfc(ax / (2.0 * std::sqrt(nu * t)))) /
                       lam2;
    return rel_err(lhs, rhs);
}

// int_0^t |x| e^{-x^2/(4 nu r) + (t-r)/(4 nu)} Phi(sqrt((t-r)/(2 nu)))
//          / sqrt(pi nu r^3) dr
//   = e^{(t-2|x|)/(4 nu)} Erfc((|x|-t)/sqrt(4 nu t))
double check_historic_lebesgue_integral(Rng& rng, const QuadConfig& cfg) {
    const double nu = uniform(rng, 0.4, 2.0);
    const double t = uniform(rng, 0.3, 2.0);
    double x = uniform(rng, 0.15, 2.0) * (uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0);
    const double ax = std::fabs(x);
    const auto f = [&](double r) {
        const double expo = -x * x / (4.0 * nu * r) + (t - r) / (4.0 * nu);
        if (expo < -700.0) return 0.0;
        return ax / std::sqrt(M_PI * nu * r * r * r) * std::exp(expo) *
               std_normal_cdf(std::sqrt((t - r) / (2.0 * nu)));
    };
    const double lhs = integrate_adaptive(f, 0.0, t, cfg).value;
    const double rhs =
        std::exp((t - 2.0 * ax) / (4.0 * nu)) * erfc((ax - t) / std::sqrt(4.0 * nu * t));
    return rel_err(lhs, rhs);
}

// The historical delta-data equal-time correlation integral against its
// closed form G G + G_{nu/2}(t,(x+y)/2) e^{(t-2|x-y|)/(4nu)} Erfc(...)/(4nu).
double check_historic_delta_integral(Rng& rng, const QuadConfig& cfg) {
    const double nu = uniform(rng, 0.4, 2.0);
    const double t = uniform(rng, 0.3, 2.0);
    const double x = uniform(rng, -1.5, 1.5);
    double y = uniform(rng, -1.5, 1.5);
    if (std::fabs(x - y) < 0.05) y += 0.2;
    const double d2 = (x - y) * (x - y);

    const double pre = std::exp(-(x * x + y * y) / (2.0 * nu * t)) / (2.0 * M_PI * nu * t) *
                       std::fabs(x - y) / std::sqrt(4.0 * M_PI * nu * t);
    const auto f = [&](double s) {
        const double expo = -d2 / (4.0 * nu * t) * (1.0 - s) / s;
        if (expo < -700.0) return 0.0;
        const double bracket = 1.0 + std::sqrt(M_PI * t * (1.0 - s) / nu) *
                                         std::exp(t * (1.0 - s) / (4.0 * nu)) *
                                         std_normal_cdf(std::sqrt(t * (1.0 - s) / (2.0 * nu)));
        return std::exp(expo) / std::sqrt(s * s * s) * bracket;
    };
    // 1/sqrt(1-s) endpoint: substitute w = 1-s
    const double integral =
        integrate_sqrt_singular([&](double w) { return f(1.0 - w) / std::sqrt(w); }, 0.5, cfg) +
        integrate_adaptive([&](double s) { return f(s) / std::sqrt(1.0 - s); }, 0.0, 0.5, cfg)
            .value;
    const double lhs = pre * integral;

    const double ax = std::fabs(x - y);
    const double rhs = heat_kernel(nu, t, x) * heat_kernel(nu, t, y) +
                       heat_kernel(nu / 2.0, t, 0.5 * (x + y)) / (4.0 * nu) *
                           std::exp((t - 2.0 * ax) / (4.0 * nu)) *
                           erfc((ax - t) / std::sqrt(4.0 * nu * t));
    return rel_err(lhs, rhs);
}

// int_t^tau G_nu(r,x) dr and the double heat time integral, against closed
// forms built from Phi and the kernel itself.
double check_double_heat_integral(Rng& rng, const QuadConfig& cfg) {
    const double nu = uniform(rng, 0.4, 2.0);
    const double t = uniform(rng, 0.2, 1.5);
    const bool equal_time = uniform(rng, 0.0, 1.0) < 0.4;
    const double tau = equal_time ? t : t + uniform(rng, 0.1, 1.5);
    const double x = uniform(rng, -1.5, 1.5);
    const double y = uniform(rng, -1.5, 1.5);

    // single time integral
    double e1 = 0.0;
    if (tau > t) {
        const double xs = std::fabs(x) + 0.2;  // keep away from the removable x=0 case
        const auto f = [&](double r) { return heat_kernel(nu, r, xs); };
        const double lhs1 = integrate_adaptive(f, t, tau, cfg).value;
        const double rhs1 =
            2.0 * xs / nu *
                (std_normal_cdf(xs / std::sqrt(nu * tau)) - std_normal_cdf(xs / std::sqrt(nu * t))) +
            2.0 * tau * heat_kernel(nu, tau, xs) - 2.0 * t * heat_kernel(nu, t, xs);
        e1 = rel_err(lhs1, rhs1);
    }

    // double integral: inner z layer by quadrature, outer r with the
    // substitution rule at r -> t
    // each kernel gets a window sized to its own width so neither needle is
    // missed as r -> t
    const auto slice = [&](double r) {
        const double t1 = t - r;
        const double t2 = tau - r;
        const double w1 = 26.0 * std::sqrt(nu * t1);
        const double w2 = 26.0 * std::sqrt(nu * t2);
        const auto g = [&](double z) {
            return heat_kernel(nu, t1, x - z) * heat_kernel(nu, t2, y - z);
        };
        const std::vector<detail::Window> ws = {{x - w1, x + w1}, {y - w2, y + w2}};
        return detail::integrate_over_windows(g, ws, cfg);
    };
    const double lhs2 =
        integrate_sqrt_singular([&](double w) { return slice(t - w); }, t, cfg);
    const double rhs2 = double_heat_time_integral(nu, t, x, tau, y);
    return std::max(e1, rel_err(lhs2, rhs2));
}

// int_0^t G_nu(r,x) G_sigma(t-r,y) dr
//   = Erfc( (|x|/sqrt(nu) + |y|/sqrt(sigma)) / sqrt(2t) ) / (2 sqrt(nu sigma))
double check_two_kernel_time_integral(Rng& rng, const QuadConfig& cfg) {
    const double nu = uniform(rng, 0.4, 2.5);
    const double sg = uniform(rng, 0.4, 2.5);
    const double t = uniform(rng, 0.3, 2.0);
    const double x = uniform(rng, 0.15, 1.5) * (uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0);
    const double y = uniform(rng, 0.15, 1.5) * (uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0);
    const auto f = [&](double r) {
        return heat_kernel(nu, r, x) * heat_kernel(sg, t - r, y);
    };
    const double lhs = integrate_adaptive(f, 0.0, t, cfg).value;
    const double rhs =
        erfc((std::fabs(x) / std::sqrt(nu) + std::fabs(y) / std::sqrt(sg)) / std::sqrt(2.0 * t)) /
        (2.0 * std::sqrt(nu * sg));
    return rel_err(lhs, rhs);
}

IdentityCheck run_draws(const std::string& name, int draws, double tol, Rng& rng,
                        double (*fn)(Rng&, const QuadConfig&), const QuadConfig& cfg) {
    IdentityCheck c;
    c.name = name;
    c.draws = draws;
    c.tol = tol;
    for (int i = 0; i < draws; ++i) c.max_rel_err = std::max(c.max_rel_err, fn(rng, cfg));
    c.pass = c.max_rel_err <= tol;
    return c;
}

}  // namespace

std::vector<IdentityCheck> verify_appendix_identities(int draws, std::uint64_t seed,
                                                      double rel_tol, const QuadConfig& cfg) {
    Rng rng(seed);
    std::vector<IdentityCheck> out;
    out.push_back(run_draws("exp-phi antiderivative", draws, rel_tol, rng,
                            check_exp_phi_antiderivative, cfg));
    out.push_back(
        run_draws("heat-kernel product rules", draws, 1e-10, rng, check_kernel_product_rules, cfg));
    out.push_back(run_draws("H against G_{2nu} time integral", draws, rel_tol, rng,
                            check_h_against_kernel, cfg));
    out.push_back(run_draws("historical Lebesgue correlation integral", draws, rel_tol, rng,
                            check_historic_lebesgue_integral, cfg));
    out.push_back(run_draws("historical delta correlation integral", draws, rel_tol, rng,
                            check_historic_delta_integral, cfg));
    out.push_back(run_draws("double heat time integral", draws, rel_tol, rng,
                            check_double_heat_integral, cfg));
    out.push_back(run_draws("two-kernel time integral", draws, rel_tol, rng,
                            check_two_kernel_time_integral, cfg));
    return out;
}

IdentityCheck verify_kernel_conv_identity(const std::vector<std::pair<double, double>>& nu_lam,
                                          double rel_tol, const QuadConfig& cfg) {
    IdentityCheck c;
    c.name = "(K star L0) = K - L0";
    c.tol = rel_tol;
    for (auto [nu, lam] : nu_lam) {
        const KernelContext ctx(nu, lam);
        for (int it = 0; it < 5; ++it) {
            for (int ix = 0; ix < 5; ++ix) {
                const double t = 0.1 + (2.0 - 0.1) * it / 4.0;
                const double x = -2.0 + 4.0 * ix / 4.0;
                const auto slice = [&](double s) {
                    const double w1 = 28.0 * std::sqrt(nu * s);
                    const double w2 = 28.0 * std::sqrt(nu * (t - s));
                    const auto g = [&](double z) {
                        return kernel_k(ctx, s, z) * l0(ctx, t - s, x - z);
                    };
                    const std::vector<detail::Window> ws = {{-w1, w1}, {x - w2, x + w2}};
                    return detail::integrate_over_windows(g, ws, cfg);
                };
                const double mid = 0.5 * t;
                const double lhs =
                    integrate_sqrt_singular(slice, mid, cfg) +
                    integrate_sqrt_singular([&](double w) { return slice(t - w); }, t - mid, cfg);
                const double rhs = kernel_k(ctx, t, x) - l0(ctx, t, x);
                c.max_rel_err = std::max(c.max_rel_err, std::fabs(lhs - rhs) / kernel_k(ctx, t, x));
                ++c.draws;
            }
        }
    }
    c.pass = c.max_rel_err <= c.tol;
    return c;
}

SeriesAgreement verify_series_agreement(double nu, double lam, double rel_tol) {
    SeriesAgreement out;
    out.check.name = "series sum of L_n vs closed-form K";
    out.check.tol = rel_tol;
    const KernelContext ctx(nu, lam);
    for (int it = 0; it < 5; ++it) {
        for (int ix = 0; ix < 5; ++ix) {
            const double t = 0.1 + (2.0 - 0.1) * it / 4.0;
            const double x = -2.0 + 4.0 * ix / 4.0;
            const SeriesResult s = kernel_series(ctx, t, x);
            const double k = kernel_k(ctx, t, x);
            out.check.max_rel_err = std::max(out.check.max_rel_err, std::fabs(s.value - k) / k);
            out.max_terms = std::max(out.max_terms, s.n_terms);
            ++out.check.draws;
        }
    }
    out.check.pass = out.check.max_rel_err <= rel_tol;
    return out;
}

IdentityCheck verify_renewal_residual(double nu, double lam, double varsigma, int n_points,
                                      double rel_tol, const QuadConfig& cfg) {
    IdentityCheck c;
    c.name = "renewal equation residual";
    c.tol = rel_tol;
    const ModelParams mp = ModelParams::quasi(nu, lam, varsigma);
    const KernelContext ctx(nu, lam);

    const InitialMeasure fixtures[2] = {InitialMeasure::lebesgue(1.0), InitialMeasure::delta()};
    for (const auto& mu : fixtures) {
        for (int i = 0; i < n_points; ++i) {
            const double t = 0.15 + 1.5 * i / std::max(1, n_points - 1);
            const double x = -1.0 + 2.0 * i / std::max(1, n_points - 1);
            const double f_tx = second_moment_exact(mp, mu, t, x);

            // (f star L0)(t,x): Gaussian z layer in closed windows, time layer
            // with sqrt substitutions at both endpoints.
            // L0(t-s, x-.) confines z to a width-sqrt(nu(t-s)) spike at x;
            // atom data adds its own spike of f at the origin.
            const auto slice = [&](double s) {
                const double w0 = 28.0 * std::sqrt(nu * (t - s));
                std::vector<detail::Window> ws = {{x - w0, x + w0}};
                if (mu.single_atom()) {
                    const double wa = 40.0 * std::sqrt(nu * s);
                    ws.push_back({-wa, wa});
                }
                const auto g = [&](double z) {
                    return second_moment_exact(mp, mu, s, z) * l0(ctx, t - s, x - z);
                };
                return detail::integrate_over_windows(g, ws, cfg);
            };
            const double mid = 0.5 * t;
            const double conv =
                integrate_sqrt_singular(slice, mid, cfg) +
                integrate_sqrt_singular([&](double w) { return slice(t - w); }, t - mid, cfg);

            // the additive level enters the renewal equation through
            // f = J0^2 + ((vs^2 + f) star L0)
            const double vs_term =
                varsigma * varsigma * lam * lam * std::sqrt(t / (M_PI * nu));  // (vs^2 star L0)
            const double j = j0(mu, nu, t, x);
            const double resid = std::fabs(f_tx - j * j - conv - vs_term) / f_tx;
            c.max_rel_err = std::max(c.max_rel_err, resid);
            ++c.draws;
        }
    }
    c.pass = c.max_rel_err <= rel_tol;
    return c;
}

}  // namespace roughheat
