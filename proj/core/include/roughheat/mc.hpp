#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "roughheat/correlations.hpp"
#include "roughheat/initial_data.hpp"

namespace roughheat {

// Noise coefficient for the simulator: either the quasi-linear family
// rho(u) = lam sqrt(varsigma^2 + u^2) (rho(u) = lam u when varsigma = 0), or
// a Lipschitz table interpolated linearly and extrapolated with the edge
// slopes.
struct QuasiLinearRho {
    double lam = 1.0;
    double varsigma = 0.0;
};

struct TableRho {
    std::vector<double> u;
    std::vector<double> rho;
};

using RhoSpec = std::variant<QuasiLinearRho, TableRho>;

// Explicit finite-difference simulation of the stochastic heat equation on
// [-half_width, half_width] with zero Dirichlet boundaries:
//   u^{n+1}_j = u^n_j + (nu dt)/(2 dx^2) (u^n_{j+1} - 2 u^n_j + u^n_{j-1})
//               + rho(u^n_j) xi^n_j sqrt(dt/dx),
// xi i.i.d. standard normal (Ito evaluation at the left time point). The
// per-cell noise variance dt/dx discretizes space-time white noise density.
struct MCConfig {
    double half_width = 4.0;  // domain [-L, L]
    double dx = 0.02;
    double dt = 1e-4;
    double t_end = 0.5;
    int replications = 1000;
    std::uint64_t master_seed = 1;
    RhoSpec rho{};
    InitialMeasure mu = InitialMeasure::lebesgue(1.0);
    int workers = 0;  // 0: hardware concurrency

    void validate() const;  // stability nu dt/dx^2 <= 1, positive sizes
    // Buffer rule for query points: |x| <= half_width - 6 sqrt(nu t / 2)
    // (boundary contamination below ~2e-5 relative at the edge of validity).
    void validate_query(double t, double x) const;
    int grid_points() const;
    double nu = 1.0;
};

struct MCEstimate {
    double value = 0.0;
    double stderr_ = 0.0;
    long replications = 0;
    std::uint64_t seed = 0;
};

// One replication; returns the field at each requested time (snapped to the
// step grid), deterministically from (master_seed, replication_index).
std::vector<std::vector<double>> simulate_path(const MCConfig& cfg, int replication_index,
                                               const std::vector<double>& snapshot_times);

// Sample moment E[u(t,x)^p] over all replications. Replications run in
// parallel; the reduction is in replication order, so results are
// bit-identical for a fixed seed regardless of worker count.
MCEstimate estimate_moment(const MCConfig& cfg, int p, double t, double x);

// Sample two-point estimate E[u(t,x) u(tau,y)]; one path supplies both
// snapshots.
MCEstimate estimate_two_point(const MCConfig& cfg, const CorrelationQuery& q);

// Grid helpers (index of the node nearest x, snapped coordinates).
int nearest_node(const MCConfig& cfg, double x);
double snapped_x(const MCConfig& cfg, double x);
double snapped_t(const MCConfig& cfg, double t);

}  // namespace roughheat
