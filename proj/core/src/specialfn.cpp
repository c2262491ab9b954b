#include "roughheat/specialfn.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace roughheat {

namespace {

// Rational minimax coefficients from W. J. Cody's CALERF (netlib specfun).
// The three branches cover |x| <= 0.46875, 0.46875 < |x| <= 4 and |x| > 4.
constexpr double kA[5] = {3.1611237438705656, 113.864154151050156, 377.485237685302021,
                          3209.37758913846947, 0.185777706184603153};
constexpr double kB[4] = {23.6012909523441209, 244.024637934444173, 1282.61652607737228,
                          2844.23683343917062};
constexpr double kC[9] = {0.564188496988670089, 8.88314979438837594, 66.1191906371416295,
                          298.635138197400131,  881.95222124176909,  1712.04761263407058,
                          2051.07837782607147,  1230.33935479799725, 2.15311535474403846e-8};
constexpr double kD[8] = {15.7449261107098347, 117.693950891312499, 537.181101862009858,
                          1621.38957456669019, 3290.79923573345963, 4362.61909014324716,
                          3439.36767414372164, 1230.33935480374942};
constexpr double kP[6] = {0.305326634961232344, 0.360344899949804439, 0.125781726111229246,
                          0.0160837851487422766, 6.58749161529837803e-4, 0.0163153871373020978};
constexpr double kQ[5] = {2.56852019228982242, 1.87295284992346047, 0.527905102951428412,
                          0.0605183413124413191, 0.00233520497626869185};

constexpr double kSqrtPiInv = 0.56418958354775628695;  // 1/sqrt(pi)
constexpr double kThresh = 0.46875;
constexpr double kXNeg = -26.628;   // erfcx overflows below this
constexpr double kXBig = 26.543;    // erfc underflows above this
constexpr double kXHuge = 6.71e7;   // above: erfcx(x) = 1/(sqrt(pi) x)
constexpr double kXMax = 2.53e307;  // erfcx domain limit
constexpr double kXSmall = 1.11e-16;

enum class ErfKind { Erf, Erfc, Erfcx };

double truncate_sixteenths(double y) { return std::trunc(y * 16.0) / 16.0; }

// Cody's CALERF. Evaluates erf, erfc or exp(x^2) erfc depending on `kind`.
double calerf(double x, ErfKind kind) {
    const double y = std::fabs(x);
    double result;

    if (y <= kThresh) {
        double ysq = (y > kXSmall) ? y * y : 0.0;
        double xnum = kA[4] * ysq;
        double xden = ysq;
        for (int i = 0; i < 3; ++i) {
            xnum = (xnum + kA[i]) * ysq;
            xden = (xden + kB[i]) * ysq;
        }
        result = x * (xnum + kA[3]) / (xden + kB[3]);
        if (kind != ErfKind::Erf) result = 1.0 - result;
        if (kind == ErfKind::Erfcx) result = std::exp(ysq) * result;
        return result;
    }

    if (y <= 4.0) {
        double xnum = kC[8] * y;
        double xden = y;
        for (int i = 0; i < 7; ++i) {
            xnum = (xnum + kC[i]) * y;
            xden = (xden + kD[i]) * y;
        }
        result = (xnum + kC[7]) / (xden + kD[7]);
        if (kind != ErfKind::Erfcx) {
            const double ysq = truncate_sixteenths(y);
            const double del = (y - ysq) * (y + ysq);
            result *= std::exp(-ysq * ysq) * std::exp(-del);
        }
    } else {
        result = 0.0;
        bool skip_rational = false;
        if (y >= kXBig) {
            if (kind != ErfKind::Erfcx || y >= kXMax) {
                skip_rational = true;
            } else if (y >= kXHuge) {
                result = kSqrtPiInv / y;
                skip_rational = true;
            }
        }
        if (!skip_rational) {
            const double ysq = 1.0 / (y * y);
            double xnum = kP[5] * ysq;
            double xden = ysq;
            for (int i = 0; i < 4; ++i) {
                xnum = (xnum + kP[i]) * ysq;
                xden = (xden + kQ[i]) * ysq;
            }
            result = ysq * (xnum + kP[4]) / (xden + kQ[4]);
            result = (kSqrtPiInv - result) / y;
            if (kind != ErfKind::Erfcx) {
                const double yt = truncate_sixteenths(y);
                const double del = (y - yt) * (y + yt);
                result *= std::exp(-yt * yt) * std::exp(-del);
            }
        }
    }

    // Negative-argument fixups.
    switch (kind) {
        case ErfKind::Erf:
            result = (0.5 - result) + 0.5;
            if (x < 0.0) result = -result;
            break;
        case ErfKind::Erfc:
            if (x < 0.0) result = 2.0 - result;
            break;
        case ErfKind::Erfcx:
            if (x < 0.0) {
                if (x < kXNeg) {
                    result = std::numeric_limits<double>::infinity();
                } else {
                    const double yt = truncate_sixteenths(x);
                    const double del = (x - yt) * (x + yt);
                    const double e = std::exp(yt * yt) * std::exp(del);
                    result = (e + e) - result;
                }
            }
            break;
    }
    return result;
}

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kLogHalf = -0.69314718055994530942;

}  // namespace

double erf(double x) {
    if (std::isnan(x)) return x;
    return calerf(x, ErfKind::Erf);
}

double erfc(double x) {
    if (std::isnan(x)) return x;
    return calerf(x, ErfKind::Erfc);
}

double erfcx(double x) {
    if (std::isnan(x)) return x;
    return calerf(x, ErfKind::Erfcx);
}

double log_erfc(double x) {
    if (std::isnan(x)) return x;
    if (x <= 0.0) return std::log(calerf(x, ErfKind::Erfc));  // erfc in [1,2], no cancellation
    return std::log(calerf(x, ErfKind::Erfcx)) - x * x;
}

double std_normal_cdf(double x) {
    if (std::isnan(x)) throw std::domain_error("std_normal_cdf: NaN argument");
    return 0.5 * erfc(-x * kInvSqrt2);
}

double log_normal_cdf(double x) {
    if (std::isnan(x)) throw std::domain_error("log_normal_cdf: NaN argument");
    return kLogHalf + log_erfc(-x * kInvSqrt2);
}

double std_normal_pdf(double x) {
    constexpr double kInvSqrt2Pi = 0.39894228040143267794;
    return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double log_sum_exp(double la, double lb) {
    if (la < lb) std::swap(la, lb);
    if (std::isinf(la) && la < 0.0) return la;  // both -inf
    return la + std::log1p(std::exp(lb - la));
}

double log_sum_exp(std::span<const double> ls) {
    double m = -std::numeric_limits<double>::infinity();
    for (double v : ls) m = std::max(m, v);
    if (std::isinf(m) && m < 0.0) return m;
    double s = 0.0;
    for (double v : ls) s += std::exp(v - m);
    return m + std::log(s);
}

double log_sum_exp(std::initializer_list<double> ls) {
    return log_sum_exp(std::span<const double>(ls.begin(), ls.size()));
}

double log_phi_diff(double a, double b) {
    if (!(a < b)) throw std::domain_error("log_phi_diff: requires a < b");
    if (b <= 0.0) {
        const double lb = log_normal_cdf(b);
        const double la = log_normal_cdf(a);
        return lb + std::log1p(-std::exp(la - lb));
    }
    if (a >= 0.0) return log_phi_diff(-b, -a);  // Phi(b)-Phi(a) = Phi(-a)-Phi(-b)
    // a < 0 < b: the difference is not tiny, direct evaluation is fine.
    return std::log(0.5 * (roughheat::erf(b * kInvSqrt2) - roughheat::erf(a * kInvSqrt2)));
}

double heat_kernel(double nu, double t, double x) {
    if (!(nu > 0.0) || std::isnan(t) || std::isnan(x))
        throw std::domain_error("heat_kernel: requires nu > 0 and finite (t,x)");
    if (t <= 0.0) return 0.0;  // G_nu(t,.) vanishes for t <= 0
    const double v = nu * t;
    return std::exp(-x * x / (2.0 * v)) / std::sqrt(2.0 * M_PI * v);
}

double log_heat_kernel(double nu, double t, double x) {
    if (!(nu > 0.0) || !(t > 0.0))
        throw std::domain_error("log_heat_kernel: requires nu > 0 and t > 0");
    const double v = nu * t;
    return -x * x / (2.0 * v) - 0.5 * std::log(2.0 * M_PI * v);
}

double log_smooth_exp(double a, double beta, double x) {
    if (!(a > 0.0)) throw std::domain_error("smooth_exp: requires a > 0");
    const double ra = std::sqrt(a);
    const ScaledExpPhi lo = ScaledExpPhi::make(-beta * x, (a * beta - x) / ra);
    const ScaledExpPhi hi = ScaledExpPhi::make(beta * x, (a * beta + x) / ra);
    return log_sum_exp(lo.log_value, hi.log_value);
}

double smooth_exp(double a, double beta, double x) {
    return std::exp(log_smooth_exp(a, beta, x));
}

double smooth_exp_dx(double a, double beta, double x) {
    if (!(a > 0.0)) throw std::domain_error("smooth_exp_dx: requires a > 0");
    const double ra = std::sqrt(a);
    const double lo = std::exp(-beta * x) * std_normal_cdf((a * beta - x) / ra);
    const double hi = std::exp(beta * x) * std_normal_cdf((a * beta + x) / ra);
    return beta * (hi - lo);
}

}  // namespace roughheat
