#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "roughheat/quadrature.hpp"

namespace roughheat {

// One closed-form identity checked against independent quadrature at random
// parameter draws.
struct IdentityCheck {
    std::string name;
    int draws = 0;
    double max_rel_err = 0.0;
    double tol = 0.0;
    bool pass = false;
};

// The closed-form integral identities used by the moment and correlation
// formulas (heat-kernel product/square rules, exp*Phi antiderivative, the
// H-against-kernel time integrals, the historical delta two-point integral,
// the double heat time integral and the two-kernel time integral), each
// verified against adaptive quadrature.
std::vector<IdentityCheck> verify_appendix_identities(int draws, std::uint64_t seed,
                                                      double rel_tol = 1e-6,
                                                      const QuadConfig& cfg = {});

// (K star L0)(t,x) = K(t,x) - L0(t,x) by honest space-time quadrature on a
// grid of (t,x) for the given (nu,lam) pairs.
IdentityCheck verify_kernel_conv_identity(const std::vector<std::pair<double, double>>& nu_lam,
                                          double rel_tol = 1e-6, const QuadConfig& cfg = {});

// Truncated series sum_{n<=N} L_n against the closed form of K; N adaptive.
struct SeriesAgreement {
    IdentityCheck check;
    int max_terms = 0;
};
SeriesAgreement verify_series_agreement(double nu, double lam, double rel_tol = 1e-10);

// Renewal residual |f - J0^2 - (f star L0)| / f for the Lebesgue and unit
// delta fixtures, with f the exact second moment.
IdentityCheck verify_renewal_residual(double nu, double lam, double varsigma, int n_points,
                                      double rel_tol = 1e-6, const QuadConfig& cfg = {});

}  // namespace roughheat
