#include "roughheat/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "roughheat/errors.hpp"
#include "roughheat/specialfn.hpp"
#include "windows.hpp"

namespace roughheat {

using detail::Window;
using detail::clip_windows;
using detail::integrate_over_windows;

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

double GridDensityComponent::value(double z) const {
    if (x.empty() || z < x.front() || z > x.back()) return 0.0;
    const auto it = std::upper_bound(x.begin(), x.end(), z);
    if (it == x.begin()) return density.front();
    const size_t hi = std::min<size_t>(it - x.begin(), x.size() - 1);
    const size_t lo = hi - 1;
    const double w = (z - x[lo]) / (x[hi] - x[lo]);
    return density[lo] + w * (density[hi] - density[lo]);
}

InitialMeasure InitialMeasure::lebesgue(double scale) {
    InitialMeasure m;
    m.add(LebesgueComponent{scale});
    return m;
}

InitialMeasure InitialMeasure::atom(double location, double mass) {
    InitialMeasure m;
    m.add(AtomComponent{location, mass});
    return m;
}

InitialMeasure InitialMeasure::exp_density(double rate) {
    InitialMeasure m;
    m.add(ExpDensityComponent{rate});
    return m;
}

InitialMeasure InitialMeasure::grid(std::vector<double> x, std::vector<double> density) {
    InitialMeasure m;
    m.add(GridDensityComponent{std::move(x), std::move(density)});
    return m;
}

void InitialMeasure::validate() const {
    for (const auto& c : components_) {
        if (const auto* l = std::get_if<LebesgueComponent>(&c)) {
            if (!std::isfinite(l->scale)) throw std::domain_error("measure: non-finite Lebesgue scale");
        } else if (const auto* a = std::get_if<AtomComponent>(&c)) {
            if (!std::isfinite(a->location) || !std::isfinite(a->mass))
                throw std::domain_error("measure: non-finite atom");
        } else if (const auto* e = std::get_if<ExpDensityComponent>(&c)) {
            if (!std::isfinite(e->rate)) throw std::domain_error("measure: non-finite exponential rate");
        } else if (const auto* g = std::get_if<GridDensityComponent>(&c)) {
            if (g->x.size() != g->density.size() || g->x.size() < 2)
                throw std::domain_error("measure: grid needs >= 2 matching samples");
            for (size_t i = 0; i < g->x.size(); ++i) {
                if (!std::isfinite(g->x[i]) || !std::isfinite(g->density[i]))
                    throw std::domain_error("measure: non-finite grid sample");
                if (i > 0 && !(g->x[i] > g->x[i - 1]))
                    throw std::domain_error("measure: grid abscissae must be strictly increasing");
            }
        }
    }

    // Spot-check int exp(-a z^2) |mu|(dz) at three Gaussian rates. Every
    // supported component is analytically admissible; this catches corrupted
    // grid input.
    for (double a : {0.01, 0.1, 1.0}) {
        double log_total = kNegInf;
        for (const auto& c : components_) {
            double lt = kNegInf;
            if (const auto* l = std::get_if<LebesgueComponent>(&c)) {
                if (l->scale != 0.0)
                    lt = std::log(std::fabs(l->scale)) + 0.5 * std::log(M_PI / a);
            } else if (const auto* at = std::get_if<AtomComponent>(&c)) {
                if (at->mass != 0.0) lt = std::log(std::fabs(at->mass)) - a * at->location * at->location;
            } else if (const auto* e = std::get_if<ExpDensityComponent>(&c)) {
                // 2 int_0^inf exp(sz - az^2) dz, in the log domain
                const double s = e->rate;
                lt = 0.5 * std::log(M_PI / a) + s * s / (4.0 * a) +
                     log_erfc(-s / (2.0 * std::sqrt(a)));
            } else if (const auto* g = std::get_if<GridDensityComponent>(&c)) {
                double sum = 0.0;
                for (size_t i = 0; i + 1 < g->x.size(); ++i) {
                    const double f0 = std::fabs(g->density[i]) * std::exp(-a * g->x[i] * g->x[i]);
                    const double f1 =
                        std::fabs(g->density[i + 1]) * std::exp(-a * g->x[i + 1] * g->x[i + 1]);
                    sum += 0.5 * (f0 + f1) * (g->x[i + 1] - g->x[i]);
                }
                lt = sum > 0.0 ? std::log(sum) : kNegInf;
            }
            log_total = log_sum_exp(log_total, lt);
        }
        if (std::isnan(log_total) || log_total == kInf)
            throw std::domain_error("measure: Gaussian-tail integrability check failed");
    }
}

bool InitialMeasure::nonnegative() const {
    for (const auto& c : components_) {
        if (const auto* l = std::get_if<LebesgueComponent>(&c)) {
            if (l->scale < 0.0) return false;
        } else if (const auto* a = std::get_if<AtomComponent>(&c)) {
            if (a->mass < 0.0) return false;
        } else if (const auto* g = std::get_if<GridDensityComponent>(&c)) {
            for (double v : g->density)
                if (v < 0.0) return false;
        }
    }
    return true;
}

InitialMeasure InitialMeasure::abs() const {
    InitialMeasure out;
    for (const auto& c : components_) {
        if (const auto* l = std::get_if<LebesgueComponent>(&c)) {
            out.add(LebesgueComponent{std::fabs(l->scale)});
        } else if (const auto* a = std::get_if<AtomComponent>(&c)) {
            out.add(AtomComponent{a->location, std::fabs(a->mass)});
        } else if (const auto* e = std::get_if<ExpDensityComponent>(&c)) {
            out.add(*e);
        } else if (const auto* g = std::get_if<GridDensityComponent>(&c)) {
            // |piecewise linear| is piecewise linear with knots at sign changes.
            GridDensityComponent ag;
            for (size_t i = 0; i + 1 < g->x.size(); ++i) {
                ag.x.push_back(g->x[i]);
                ag.density.push_back(std::fabs(g->density[i]));
                const double v0 = g->density[i], v1 = g->density[i + 1];
                if (v0 * v1 < 0.0) {
                    const double z = g->x[i] + v0 / (v0 - v1) * (g->x[i + 1] - g->x[i]);
                    ag.x.push_back(z);
                    ag.density.push_back(0.0);
                }
            }
            ag.x.push_back(g->x.back());
            ag.density.push_back(std::fabs(g->density.back()));
            out.add(std::move(ag));
        }
    }
    return out;
}

double InitialMeasure::exp_rate_sup() const {
    double s = kInf;
    for (const auto& c : components_) {
        if (std::holds_alternative<LebesgueComponent>(c)) {
            s = std::min(s, 0.0);
        } else if (const auto* e = std::get_if<ExpDensityComponent>(&c)) {
            s = std::min(s, e->rate < 0.0 ? -e->rate : 0.0);
        }
        // atoms and grids have compact support: no constraint
    }
    return s;
}

const LebesgueComponent* InitialMeasure::single_lebesgue() const {
    if (components_.size() != 1) return nullptr;
    return std::get_if<LebesgueComponent>(&components_[0]);
}

const AtomComponent* InitialMeasure::single_atom() const {
    if (components_.size() != 1) return nullptr;
    return std::get_if<AtomComponent>(&components_[0]);
}

const ExpDensityComponent* InitialMeasure::single_exp() const {
    if (components_.size() != 1) return nullptr;
    return std::get_if<ExpDensityComponent>(&components_[0]);
}

bool InitialMeasure::atoms_only() const {
    if (components_.empty()) return false;
    for (const auto& c : components_)
        if (!std::holds_alternative<AtomComponent>(c)) return false;
    return true;
}

namespace {

// Exact integral of a linear density segment against G_nu(t, x - z).
double segment_j0(double z0, double v0, double z1, double v1, double nu, double t, double x) {
    const double sigma = std::sqrt(nu * t);
    const double a = (z0 - x) / sigma;
    const double b = (z1 - x) / sigma;
    const double slope = (v1 - v0) / (z1 - z0);
    const double alpha = v0 - slope * z0;  // density(z) = alpha + slope z
    const double dphi = std_normal_cdf(b) - std_normal_cdf(a);
    return (alpha + slope * x) * dphi + slope * sigma * (std_normal_pdf(a) - std_normal_pdf(b));
}

double j0_component(const MeasureComponent& c, double nu, double t, double x) {
    if (const auto* l = std::get_if<LebesgueComponent>(&c)) return l->scale;
    if (const auto* a = std::get_if<AtomComponent>(&c))
        return a->mass * heat_kernel(nu, t, x - a->location);
    if (const auto* e = std::get_if<ExpDensityComponent>(&c)) {
        const double s = e->rate;
        return std::exp(s * s * nu * t / 2.0 + log_smooth_exp(nu * t, s, x));
    }
    const auto& g = std::get<GridDensityComponent>(c);
    double sum = 0.0;
    for (size_t i = 0; i + 1 < g.x.size(); ++i)
        sum += segment_j0(g.x[i], g.density[i], g.x[i + 1], g.density[i + 1], nu, t, x);
    return sum;
}

double log_j0_component(const MeasureComponent& c, double nu, double t, double x) {
    if (const auto* l = std::get_if<LebesgueComponent>(&c))
        return l->scale > 0.0 ? std::log(l->scale) : kNegInf;
    if (const auto* a = std::get_if<AtomComponent>(&c))
        return a->mass > 0.0 ? std::log(a->mass) + log_heat_kernel(nu, t, x - a->location) : kNegInf;
    if (const auto* e = std::get_if<ExpDensityComponent>(&c)) {
        const double s = e->rate;
        return s * s * nu * t / 2.0 + log_smooth_exp(nu * t, s, x);
    }
    const double v = j0_component(c, nu, t, x);
    return v > 0.0 ? std::log(v) : kNegInf;
}

}  // namespace

double j0(const InitialMeasure& mu, double nu, double t, double x) {
    if (!(nu > 0.0) || !(t > 0.0)) throw std::domain_error("j0: requires nu > 0 and t > 0");
    mu.validate();
    double sum = 0.0;
    for (const auto& c : mu.components()) sum += j0_component(c, nu, t, x);
    return sum;
}

double log_j0(const InitialMeasure& mu, double nu, double t, double x) {
    if (!(nu > 0.0) || !(t > 0.0)) throw std::domain_error("log_j0: requires nu > 0 and t > 0");
    if (!mu.nonnegative()) throw std::domain_error("log_j0: requires a nonnegative measure");
    double ls = kNegInf;
    for (const auto& c : mu.components()) ls = log_sum_exp(ls, log_j0_component(c, nu, t, x));
    return ls;
}

double j0_star(const InitialMeasure& mu, double nu, double t, double x) {
    return j0(mu.abs(), nu, t, x);
}

// ---------------------------------------------------------------------------
// (J0^2 * kernel) via the double-measure reduction.

namespace {

struct Profile {
    const KernelContext& ctx;
    int n = -1;  // -1: full K profile; n >= 0: L_n profile

    double operator()(double s) const {
        return n < 0 ? k_profile(ctx, s) : ln_profile(ctx, n, s);
    }
    double lebesgue_pair(double t) const {
        return n < 0 ? h_fn(ctx, t) : eta_n(ctx, n, t);
    }
};

// T(t, dz) = int_0^t prof(s) G_{2nu}(t-s, dz) ds. Both endpoints can carry
// 1/sqrt singularities (the profile at s=0, the kernel at s=t when dz=0), so
// the integral is split at t/2 and each half runs through the sqrt rule.
double time_kernel(const Profile& prof, double t, double dz, const QuadConfig& cfg) {
    const double nu2 = 2.0 * prof.ctx.nu;
    const auto lo = [&](double s) { return prof(s) * heat_kernel(nu2, t - s, dz); };
    const auto hi = [&](double w) { return prof(t - w) * heat_kernel(nu2, w, dz); };
    const double half = 0.5 * t;
    return integrate_sqrt_singular(lo, half, cfg) + integrate_sqrt_singular(hi, half, cfg);
}

// Reach of the pair weight G_{nu/2}(t, x - (z+z')/2) T(t, z - z') in the free
// variable z, given the partner location z'.
std::vector<Window> pair_windows(const KernelContext& ctx, double t, double x, double zp) {
    const double gw = 26.0 * std::sqrt(2.0 * ctx.nu * t);
    const double reach = ctx.lam * ctx.lam * t + gw;
    return {{2.0 * x - zp - gw, 2.0 * x - zp + gw}, {zp - reach, zp + reach}};
}

// Integration range for a component's density against an externally supplied
// hull of Gaussian/pair-kernel centers.
std::vector<Window> density_windows(const MeasureComponent& c, const KernelContext& ctx, double t,
                                    std::vector<Window> base) {
    if (const auto* g = std::get_if<GridDensityComponent>(&c))
        return clip_windows(base, g->x.front(), g->x.back());
    const auto& e = std::get<ExpDensityComponent>(c);
    double margin = 30.0 * std::sqrt(2.0 * ctx.nu * t);
    if (e.rate < 0.0)
        margin += 60.0 / -e.rate;
    else
        margin += 2.0 * ctx.nu * t * e.rate;
    for (auto& w : base) {
        w.lo -= margin;
        w.hi += margin;
    }
    return base;
}

double component_density(const MeasureComponent& c, double z) {
    if (std::holds_alternative<LebesgueComponent>(c))
        return std::get<LebesgueComponent>(c).scale;
    if (const auto* e = std::get_if<ExpDensityComponent>(&c)) return std::exp(e->rate * std::fabs(z));
    return std::get<GridDensityComponent>(c).value(z);
}

bool is_density(const MeasureComponent& c) {
    return std::holds_alternative<ExpDensityComponent>(c) ||
           std::holds_alternative<GridDensityComponent>(c);
}

// Bilinear pair term: int int w(z1,z2) mu_i(dz1) mu_j(dz2) with
// w(z1,z2) = G_{nu/2}(t, x-(z1+z2)/2) T(t, z2-z1).
double pair_term(const MeasureComponent& ci, const MeasureComponent& cj, const KernelContext& ctx,
                 const Profile& prof, double t, double x, const QuadConfig& cfg) {
    const double nu_half = ctx.nu / 2.0;

    const bool leb_i = std::holds_alternative<LebesgueComponent>(ci);
    const bool leb_j = std::holds_alternative<LebesgueComponent>(cj);
    if (leb_i && leb_j)
        return std::get<LebesgueComponent>(ci).scale * std::get<LebesgueComponent>(cj).scale *
               prof.lebesgue_pair(t);

    const auto* ai = std::get_if<AtomComponent>(&ci);
    const auto* aj = std::get_if<AtomComponent>(&cj);
    if (ai && aj)
        return ai->mass * aj->mass * heat_kernel(nu_half, t, x - 0.5 * (ai->location + aj->location)) *
               time_kernel(prof, t, aj->location - ai->location, cfg);

    // one atom, one extended component
    if (ai || aj) {
        const auto* a = ai ? ai : aj;
        const MeasureComponent& other = ai ? cj : ci;
        const auto f = [&](double z) {
            return component_density(other, z) *
                   heat_kernel(nu_half, t, x - 0.5 * (a->location + z)) *
                   time_kernel(prof, t, z - a->location, cfg);
        };
        auto base = pair_windows(ctx, t, x, a->location);
        auto ws = is_density(other) ? density_windows(other, ctx, t, base) : base;
        return a->mass * integrate_over_windows(f, ws, cfg);
    }

    // both extended (Lebesgue counts as density 'scale' here): three nested
    // layers, the innermost being the sqrt-ruled time integral
    const auto wsj = [&] {
        std::vector<Window> base = pair_windows(ctx, t, x, 2.0 * x);
        base.push_back({x - 1.0, x + 1.0});
        return is_density(cj) ? density_windows(cj, ctx, t, base) : base;
    }();
    QuadConfig outer_cfg = cfg;
    outer_cfg.rel_tol = std::max(cfg.rel_tol, 1e-8);
    QuadConfig time_cfg = cfg;
    time_cfg.rel_tol = std::max(cfg.rel_tol * 0.1, 1e-10);
    const auto fj = [&](double z2) {
        const auto inner = [&](double z1) {
            return component_density(ci, z1) * heat_kernel(nu_half, t, x - 0.5 * (z1 + z2)) *
                   time_kernel(prof, t, z2 - z1, time_cfg);
        };
        auto base = pair_windows(ctx, t, x, z2);
        auto ws = is_density(ci) ? density_windows(ci, ctx, t, base) : base;
        return component_density(cj, z2) * integrate_over_windows(inner, ws, outer_cfg);
    };
    return integrate_over_windows(fj, wsj, outer_cfg);
}

double measure_pair_conv(const InitialMeasure& mu, const KernelContext& ctx, const Profile& prof,
                         double t, double x, const QuadConfig& cfg) {
    const auto& comps = mu.components();
    double total = 0.0;
    for (size_t i = 0; i < comps.size(); ++i)
        for (size_t j = i; j < comps.size(); ++j) {
            const double w = (i == j) ? 1.0 : 2.0;
            total += w * pair_term(comps[i], comps[j], ctx, prof, t, x, cfg);
        }
    return total;
}

}  // namespace

double j0_squared_conv_kernel(const InitialMeasure& mu, const KernelContext& ctx, double t,
                              double x, const QuadConfig& cfg) {
    if (!(t > 0.0)) throw std::domain_error("j0_squared_conv_kernel: requires t > 0");
    mu.validate();
    if (ctx.lam == 0.0 || mu.empty()) return 0.0;
    if (const auto* l = mu.single_lebesgue()) return l->scale * l->scale * h_fn(ctx, t);
    if (const auto* a = mu.single_atom()) {
        const double k = kernel_k(ctx, t, x - a->location) - l0(ctx, t, x - a->location);
        return a->mass * a->mass * k / (ctx.lam * ctx.lam);
    }
    return measure_pair_conv(mu, ctx, Profile{ctx, -1}, t, x, cfg);
}

double j0_squared_conv_ln(const InitialMeasure& mu, const KernelContext& ctx, int n, double t,
                          double x, const QuadConfig& cfg) {
    if (!(t > 0.0)) throw std::domain_error("j0_squared_conv_ln: requires t > 0");
    if (n < 0) throw std::domain_error("j0_squared_conv_ln: requires n >= 0");
    mu.validate();
    if (ctx.lam == 0.0 || mu.empty()) return 0.0;
    if (const auto* l = mu.single_lebesgue()) return l->scale * l->scale * eta_n(ctx, n, t);
    if (const auto* a = mu.single_atom())
        return a->mass * a->mass * ln_kernel(ctx, n + 1, t, x - a->location) / (ctx.lam * ctx.lam);
    return measure_pair_conv(mu, ctx, Profile{ctx, n}, t, x, cfg);
}

namespace {

// log of int G_{nu/2}(t, x-w) exp(-gamma max(|w|, c)) dw, the spatial layer of
// the exponential-density pair reduction. Three pieces: the plateau |w| < c
// and the two exponential tails.
double log_exp_pair_space(double nu, double t, double x, double gamma, double c) {
    const double var = nu * t / 2.0;
    const double sigma = std::sqrt(var);
    double l_plateau = kNegInf;
    if (c > 0.0) l_plateau = -gamma * c + log_phi_diff((-c - x) / sigma, (c - x) / sigma);
    const double shift = 0.5 * gamma * gamma * var;
    const double l_right = -gamma * x + shift + log_normal_cdf((x - c - gamma * var) / sigma);
    const double l_left = gamma * x + shift + log_normal_cdf(-(x + c + gamma * var) / sigma);
    return log_sum_exp({l_plateau, l_right, l_left});
}

}  // namespace

double log_j0_squared_conv_kernel(const InitialMeasure& mu, const KernelContext& ctx, double t,
                                  double x, const QuadConfig& cfg) {
    if (!(t > 0.0)) throw std::domain_error("log_j0_squared_conv_kernel: requires t > 0");
    if (ctx.lam == 0.0 || mu.empty()) return kNegInf;

    if (const auto* l = mu.single_lebesgue()) {
        if (l->scale == 0.0) return kNegInf;
        return 2.0 * std::log(std::fabs(l->scale)) + log_h(ctx, t);
    }
    if (mu.atoms_only()) {
        if (!mu.nonnegative())
            throw std::domain_error("log_j0_squared_conv_kernel: requires nonnegative atoms");
        const auto& comps = mu.components();
        double ls = kNegInf;
        for (size_t i = 0; i < comps.size(); ++i) {
            const auto& a = std::get<AtomComponent>(comps[i]);
            if (a.mass == 0.0) continue;
            for (size_t j = i; j < comps.size(); ++j) {
                const auto& b = std::get<AtomComponent>(comps[j]);
                if (b.mass == 0.0) continue;
                const double lt = (i == j ? 0.0 : M_LN2) + std::log(a.mass) + std::log(b.mass) +
                                  log_heat_kernel(ctx.nu / 2.0, t, x - 0.5 * (a.location + b.location)) +
                                  log_k_pair_integral(ctx, t, b.location - a.location);
                ls = log_sum_exp(ls, lt);
            }
        }
        return ls;
    }
    if (const auto* e = mu.single_exp()) {
        if (!(e->rate < 0.0))
            throw std::domain_error("log_j0_squared_conv_kernel: exponential data must decay");
        const double gamma = -2.0 * e->rate;
        const auto log_f = [&](double u) {
            return log_k_pair_integral(ctx, t, u) +
                   log_exp_pair_space(ctx.nu, t, x, gamma, 0.5 * u);
        };
        const double lam2 = ctx.lam * ctx.lam;
        const double umax = lam2 * t + 40.0 * std::sqrt(std::max(ctx.nu * t, 1.0)) + 80.0 / gamma;
        return M_LN2 + integrate_log_adaptive(log_f, 0.0, umax, cfg);
    }
    throw config_error(
        "log_j0_squared_conv_kernel: log-domain path supports Lebesgue, atom and decaying "
        "exponential measures");
}

}  // namespace roughheat
