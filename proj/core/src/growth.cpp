#include "roughheat/growth.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "roughheat/errors.hpp"

namespace roughheat {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double lower_index_bound(const ModelParams& mp) {
    mp.validate();
    if (mp.vlow != 0.0) return kInf;
    return 0.5 * mp.lip_lower * mp.lip_lower;
}

double upper_index_bound(const ModelParams& mp, double beta) {
    mp.validate();
    if (!(beta >= 0.0)) throw std::domain_error("upper_index_bound: requires beta >= 0");
    if (mp.vbar != 0.0)
        throw std::domain_error("upper_index_bound: unavailable for vbar != 0 (index is +inf)");
    if (beta == 0.0) return kInf;  // no tail decay: the below-threshold formula diverges
    const double L2 = mp.lip_upper * mp.lip_upper;
    if (mp.p == 2) {
        const double brk = L2 / (2.0 * mp.nu);
        if (beta >= brk) return 0.5 * L2;
        return 0.5 * beta * mp.nu + L2 * L2 / (8.0 * mp.nu * beta);
    }
    const double z2 = mp.z_p() * mp.z_p();
    const double brk = z2 * L2 / mp.nu;
    if (beta >= brk) return z2 * L2;
    return 0.5 * beta * mp.nu + z2 * z2 * L2 * L2 / (2.0 * mp.nu * beta);
}

double pam_exact_index(double nu, double lam, double beta) {
    if (!(nu > 0.0) || lam == 0.0 || !(beta > 0.0))
        throw std::domain_error("pam_exact_index: requires nu > 0, lam != 0, beta > 0");
    const double lam2 = lam * lam;
    if (beta >= lam2 / (2.0 * nu)) return 0.5 * lam2;
    return 0.5 * beta * nu + lam2 * lam2 / (8.0 * nu * beta);
}

namespace {

// Least-squares fit of s(t) = s_inf + c1/t + c2 log(t)/t over the given
// points; returns s_inf.
double trend_extrapolate(const std::vector<std::array<double, 2>>& ts) {
    const size_t n = ts.size();
    if (n == 1) return ts[0][1];
    if (n == 2) {
        // fall back to {1, 1/t}
        const double t1 = ts[0][0], s1 = ts[0][1], t2 = ts[1][0], s2 = ts[1][1];
        const double c1 = (s1 - s2) / (1.0 / t1 - 1.0 / t2);
        return s1 - c1 / t1;
    }
    // normal equations for the 3-parameter basis
    double a[3][3] = {};
    double b[3] = {};
    for (const auto& [t, s] : ts) {
        const double phi[3] = {1.0, 1.0 / t, std::log(t) / t};
        for (int i = 0; i < 3; ++i) {
            b[i] += phi[i] * s;
            for (int j = 0; j < 3; ++j) a[i][j] += phi[i] * phi[j];
        }
    }
    // solve 3x3 by Gaussian elimination with partial pivoting
    int idx[3] = {0, 1, 2};
    for (int c = 0; c < 3; ++c) {
        int piv = c;
        for (int r = c + 1; r < 3; ++r)
            if (std::fabs(a[idx[r]][c]) > std::fabs(a[idx[piv]][c])) piv = r;
        std::swap(idx[c], idx[piv]);
        for (int r = c + 1; r < 3; ++r) {
            const double m = a[idx[r]][c] / a[idx[c]][c];
            for (int k = c; k < 3; ++k) a[idx[r]][k] -= m * a[idx[c]][k];
            b[idx[r]] -= m * b[idx[c]];
        }
    }
    double sol[3];
    for (int c = 2; c >= 0; --c) {
        double v = b[idx[c]];
        for (int k = c + 1; k < 3; ++k) v -= a[idx[c]][k] * sol[k];
        sol[c] = v / a[idx[c]][c];
    }
    return sol[0];
}

}  // namespace

EmpiricalIndexResult empirical_index(const ModelParams& mp, const InitialMeasure& mu,
                                     const GrowthScan& scan, const QuadConfig& cfg) {
    mp.validate();
    mu.validate();
    if (scan.p != 2)
        throw config_error("empirical_index: only p = 2 has exact moments; use the bound formulas");
    if (!mp.quasilinear) throw config_error("empirical_index: requires quasi-linear noise");
    if (!mu.nonnegative() || mu.empty())
        throw std::domain_error("empirical_index: requires a nonnegative nonzero measure");
    if (scan.t_grid.empty() || !(scan.alpha_min < scan.alpha_max))
        throw config_error("empirical_index: empty scan");

    EmpiricalIndexResult res;
    const int k = std::min<int>(scan.trend_points, static_cast<int>(scan.t_grid.size()));
    const std::vector<double> ts(scan.t_grid.end() - k, scan.t_grid.end());
    const double t_big = ts.back();

    const auto log_m2 = [&](double t, double x) {
        return log_second_moment_exact(mp, mu, t, x, cfg);
    };

    // Collapsing sup_{|x| >= alpha t} to |x| = alpha t needs monotonicity in
    // |x|; assert it numerically on the fixture at 16 points past alpha t.
    const auto assert_monotone = [&](double alpha) {
        const double x0 = alpha * t_big;
        const double span = 6.0 * std::sqrt(mp.nu * t_big) + 0.5 * x0 + 1.0;
        double prev = log_m2(t_big, x0);
        for (int i = 1; i <= 16; ++i) {
            const double xi = x0 + span * i / 16.0;
            const double cur = log_m2(t_big, xi);
            if (cur > prev + 1e-6)
                throw std::domain_error(
                    "empirical_index: fixture is not nonincreasing in |x| beyond alpha t "
                    "(sup collapse invalid)");
            prev = cur;
        }
    };

    const auto s_limit = [&](double alpha) {
        std::vector<std::array<double, 2>> pts;
        for (double t : ts) {
            const double s = log_m2(t, alpha * t) / t;
            pts.push_back({t, s});
            res.samples.push_back({alpha, t, s});
        }
        return trend_extrapolate(pts);
    };

    assert_monotone(0.5 * (scan.alpha_min + scan.alpha_max));

    double lo = scan.alpha_min;
    double hi = scan.alpha_max;
    double s_lo = s_limit(lo);
    double s_hi = s_limit(hi);
    if (s_lo <= 0.0)
        throw accuracy_error("empirical_index: no growth at alpha_min; widen the range", lo, s_lo);
    if (s_hi > 0.0) {
        res.all_positive = true;
        res.alpha_star = kInf;
        res.bracket_lo = hi;
        res.bracket_hi = kInf;
        return res;
    }

    while (hi - lo > scan.bracket_rel_tol * 0.5 * (hi + lo)) {
        const double mid = 0.5 * (lo + hi);
        const double s_mid = s_limit(mid);
        if (s_mid > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    res.alpha_star = 0.5 * (lo + hi);
    res.bracket_lo = lo;
    res.bracket_hi = hi;
    return res;
}

IndexMonotonicityReport index_monotonicity_check(const ModelParams& base, double beta,
                                                 const std::vector<int>& p_list) {
    IndexMonotonicityReport rep;
    rep.p_list = p_list;
    for (int p : p_list) {
        ModelParams mp = base;
        mp.p = p;
        rep.upper.push_back(upper_index_bound(mp, beta));
        rep.lower.push_back(lower_index_bound(mp));
    }
    rep.pass = true;
    for (size_t i = 1; i < rep.upper.size(); ++i) {
        if (rep.upper[i] < rep.upper[i - 1] * (1.0 - 1e-12)) rep.pass = false;
        if (rep.lower[i] != rep.lower[i - 1]) rep.pass = false;
    }
    return rep;
}

}  // namespace roughheat
