#pragma once

#include <array>
#include <vector>

#include "roughheat/moments.hpp"

namespace roughheat {

// Scan configuration for the empirical growth-index estimator. The proxy
// s(t,alpha) = log E[u(t, alpha t)^2] / t is evaluated in the log domain on
// the largest `trend_points` grid times and extrapolated with a
// Richardson-style fit in {1, 1/t, log(t)/t}.
struct GrowthScan {
    std::vector<double> t_grid;      // increasing, e.g. up to 500
    double alpha_min = 0.05;
    double alpha_max = 5.0;
    int p = 2;                       // only p = 2 has exact moments
    double bracket_rel_tol = 0.02;   // bisection width relative to alpha
    int trend_points = 5;
};

// lip_lower^2 / 2 when vlow = 0; +inf when vlow != 0 (every propagation speed
// grows). Caller asserts mu nonnegative and nonzero.
double lower_index_bound(const ModelParams& mp);

// Upper bound for data with exp(-beta|x|)-integrable tails; requires
// vbar = 0. Piecewise in beta with the sharper p = 2 form.
double upper_index_bound(const ModelParams& mp, double beta);

// Exact transition for the linear model with initial density exp(-beta|x|):
//   beta nu/2 + lam^4/(8 beta nu)  for 0 < beta <= lam^2/(2 nu),
//   lam^2/2                        for beta >= lam^2/(2 nu).
double pam_exact_index(double nu, double lam, double beta);

struct EmpiricalIndexResult {
    double alpha_star = 0.0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    bool all_positive = false;  // growth at every scanned speed: index +inf
    // (alpha, t, s(t,alpha)) samples recorded along the way
    std::vector<std::array<double, 3>> samples;
};

// Brackets the sign change of the extrapolated s(., alpha) by bisection,
// after numerically asserting that |x| -> E[u(t,x)^2] is nonincreasing beyond
// alpha t on the fixture (the sup over |x| >= alpha t then sits at alpha t).
EmpiricalIndexResult empirical_index(const ModelParams& mp, const InitialMeasure& mu,
                                     const GrowthScan& scan, const QuadConfig& cfg = {});

// Upper index bounds nondecreasing in p (z_p is), lower bound constant.
struct IndexMonotonicityReport {
    std::vector<int> p_list;
    std::vector<double> upper;
    std::vector<double> lower;
    bool pass = false;
};
IndexMonotonicityReport index_monotonicity_check(const ModelParams& base, double beta,
                                                 const std::vector<int>& p_list);

}  // namespace roughheat
