#include "roughheat/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "roughheat/errors.hpp"
#include "roughheat/specialfn.hpp"

namespace roughheat {

namespace {

// QUADPACK dqk15 nodes/weights. xgk holds the Kronrod abscissae on [0,1];
// the embedded 7-point Gauss rule sits at the odd-indexed nodes.
constexpr double kXgk[8] = {0.991455371120812639206854697526329,
                            0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926,
                            0.741531185599394439863864773280788,
                            0.586087235467691130294144838258730,
                            0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245,
                            0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970,
                            0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518,
                            0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550,
                            0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649,
                            0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082,
                           0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975,
                           0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    double value;
    double err;
    bool operator<(const Panel& o) const { return err < o.err; }
};

Panel eval_panel(const Integrand& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);

    const double fc = f(c);
    double resk = kWgk[7] * fc;
    double resg = kWg[3] * fc;
    double resabs = std::fabs(resk);
    double fv[15];
    fv[7] = fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        const double f1 = f(c - dx);
        const double f2 = f(c + dx);
        fv[j] = f1;
        fv[14 - j] = f2;
        const double sum = f1 + f2;
        resk += kWgk[j] * sum;
        resabs += kWgk[j] * (std::fabs(f1) + std::fabs(f2));
        if (j % 2 == 1) resg += kWg[j / 2] * sum;
    }
    const double reskh = 0.5 * resk;
    double resasc = kWgk[7] * std::fabs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::fabs(fv[j] - reskh) + std::fabs(fv[14 - j] - reskh));
    resasc *= h;
    resabs *= h;

    double err = std::fabs((resk - resg) * h);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps50 = 50.0 * std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / eps50) err = std::max(err, eps50 * resabs);

    Panel p;
    p.a = a;
    p.b = b;
    p.value = resk * h;
    p.err = std::isfinite(p.value) ? err : std::numeric_limits<double>::infinity();
    return p;
}

}  // namespace

QuadResult integrate_adaptive(const Integrand& f, double a, double b, const QuadConfig& cfg) {
    if (!(a < b)) throw config_error("integrate_adaptive: requires a < b");
    if (!(cfg.rel_tol > 0.0) || cfg.abs_tol < 0.0)
        throw config_error("integrate_adaptive: bad tolerances");

    std::priority_queue<Panel> heap;
    Panel first = eval_panel(f, a, b);
    double total = first.value;
    double err_total = first.err;
    heap.push(first);
    int n_panels = 1;

    const auto tolerance = [&](double t) { return std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(t)); };

    while (err_total > tolerance(total) && n_panels < cfg.max_subdivisions) {
        Panel worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(worst.a < mid && mid < worst.b)) break;  // interval exhausted at machine precision
        heap.pop();
        Panel left = eval_panel(f, worst.a, mid);
        Panel right = eval_panel(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        err_total += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
        ++n_panels;
    }

    if (!std::isfinite(total) || err_total > tolerance(total)) {
        if (!std::isfinite(total) || err_total > 10.0 * tolerance(total))
            throw accuracy_error("integrate_adaptive: tolerance not reached", total, err_total);
    }
    return {total, err_total, n_panels};
}

double integrate_sqrt_singular(const Integrand& f, double t, const QuadConfig& cfg) {
    if (!(t > 0.0)) throw config_error("integrate_sqrt_singular: requires t > 0");
    const auto g = [&f](double u) { return 2.0 * u * f(u * u); };
    return integrate_adaptive(g, 0.0, std::sqrt(t), cfg).value;
}

double integrate_gaussian_weighted(const Integrand& f, double mean, double variance,
                                   const QuadConfig& cfg, double growth_rate) {
    if (!(variance > 0.0)) throw config_error("integrate_gaussian_weighted: requires variance > 0");
    const double sigma = std::sqrt(variance);
    const double radius = 12.0 * sigma + std::fabs(growth_rate) * variance;
    const double lo = mean - radius;
    const double hi = mean + radius;
    const auto g = [&](double z) {
        const double u = (z - mean) / sigma;
        return f(z) * std_normal_pdf(u) / sigma;
    };
    const QuadResult r = integrate_adaptive(g, lo, hi, cfg);
    const double boundary = (std::fabs(g(lo)) + std::fabs(g(hi))) * sigma;
    if (boundary > 10.0 * std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(r.value)))
        throw accuracy_error("integrate_gaussian_weighted: truncation insufficient", r.value,
                             boundary);
    return r.value;
}

double integrate_log_adaptive(const Integrand& log_f, double a, double b, const QuadConfig& cfg) {
    if (!(a < b)) throw config_error("integrate_log_adaptive: requires a < b");
    // Coarse scan for the peak so the shifted integrand is O(1).
    const int kScan = 128;
    double m = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= kScan; ++i) {
        const double u = a + (b - a) * i / kScan;
        m = std::max(m, log_f(u));
    }
    if (std::isinf(m) && m < 0.0) return m;
    const auto g = [&](double u) {
        const double lv = log_f(u);
        return std::isfinite(lv) || lv > 0.0 ? std::exp(lv - m) : 0.0;
    };
    const QuadResult r = integrate_adaptive(g, a, b, cfg);
    if (!(r.value > 0.0)) return -std::numeric_limits<double>::infinity();
    return m + std::log(r.value);
}

namespace {

// Piecewise integral of `f` over the union of windows around the given
// centers, each of half-width `w`, clipped against nothing (the integrand is
// assumed negligible elsewhere).
double integrate_windows(const Integrand& f, std::vector<double> centers, double w,
                         const QuadConfig& cfg) {
    std::sort(centers.begin(), centers.end());
    std::vector<std::pair<double, double>> iv;
    for (double c : centers) {
        if (!iv.empty() && c - w <= iv.back().second)
            iv.back().second = c + w;
        else
            iv.emplace_back(c - w, c + w);
    }
    double total = 0.0;
    for (auto [lo, hi] : iv) total += integrate_adaptive(f, lo, hi, cfg).value;
    return total;
}

}  // namespace

HeatIncrementReport heat_increment_bounds_check(double nu, double t, double s, double x, double y,
                                                const QuadConfig& cfg) {
    if (!(nu > 0.0) || !(0.0 <= s && s <= t))
        throw config_error("heat_increment_bounds_check: requires nu > 0 and 0 <= s <= t");
    constexpr double kC2 = 0.23331716517898393929;  // (sqrt(2)-1)/sqrt(pi)
    constexpr double kC3 = 0.56418958354775628695;  // 1/sqrt(pi)

    QuadConfig inner = cfg;
    inner.rel_tol = std::max(cfg.rel_tol, 1e-10);
    inner.abs_tol = std::max(cfg.abs_tol, 1e-14);

    HeatIncrementReport rep;

    // Spatial increment: integrate over the kernel age a = t-r in (0,t].
    if (t > 0.0) {
        const auto inner_space = [&](double a) {
            const double w = 26.0 * std::sqrt(nu * a) + 1e-300;
            const auto g = [&](double z) {
                const double d = heat_kernel(nu, a, x - z) - heat_kernel(nu, a, y - z);
                return d * d;
            };
            return integrate_windows(g, {x, y}, w, inner);
        };
        rep.lhs_space = integrate_sqrt_singular(inner_space, t, cfg);
    }
    rep.bound_space = std::fabs(x - y) / nu;

    // Time increment over the shared window [0,s]: ages a2 = s-r in (0,s],
    // a1 = a2 + (t-s).
    if (s > 0.0) {
        const double gap = t - s;
        const auto inner_t1 = [&](double a2) {
            const double a1 = a2 + gap;
            const double w = 26.0 * std::sqrt(nu * a1) + 1e-300;
            const auto g = [&](double z) {
                const double d = heat_kernel(nu, a1, x - z) - heat_kernel(nu, a2, x - z);
                return d * d;
            };
            return integrate_windows(g, {x}, w, inner);
        };
        rep.lhs_time_overlap = integrate_sqrt_singular(inner_t1, s, cfg);
    }
    rep.bound_time_overlap = kC2 * std::sqrt((t - s) / nu);

    // Tail piece over [s,t]: age a = t-r in (0,t-s].
    if (t - s > 0.0) {
        const auto inner_t2 = [&](double a) {
            const double w = 26.0 * std::sqrt(nu * a) + 1e-300;
            const auto g = [&](double z) {
                const double v = heat_kernel(nu, a, x - z);
                return v * v;
            };
            return integrate_windows(g, {x}, w, inner);
        };
        rep.lhs_time_tail = integrate_sqrt_singular(inner_t2, t - s, cfg);
    }
    rep.bound_time_tail = kC3 * std::sqrt((t - s) / nu);

    const auto within = [](double lhs, double bound) {
        return lhs <= bound * (1.0 + 1e-6) + 1e-12;
    };
    rep.ok = within(rep.lhs_space, rep.bound_space) &&
             within(rep.lhs_time_overlap, rep.bound_time_overlap) &&
             within(rep.lhs_time_tail, rep.bound_time_tail);
    return rep;
}

}  // namespace roughheat
