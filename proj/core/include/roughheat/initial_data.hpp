#pragma once

#include <variant>
#include <vector>

#include "roughheat/kernels.hpp"
#include "roughheat/quadrature.hpp"

namespace roughheat {

// Signed Borel measure given as a sum of components. Signs ride on the
// Lebesgue scale, atom masses and grid density values; admissibility
// (Gaussian-integrable tails) is spot-checked numerically by validate().

struct LebesgueComponent {
    double scale = 1.0;  // scale * dx
};

struct AtomComponent {
    double location = 0.0;
    double mass = 1.0;  // signed point mass
};

struct ExpDensityComponent {
    double rate = -1.0;  // density exp(rate * |x|); rate < 0 decays
};

// Compactly supported density, piecewise linear through (x[i], density[i]),
// zero outside [x.front(), x.back()].
struct GridDensityComponent {
    std::vector<double> x;
    std::vector<double> density;

    double value(double z) const;
};

using MeasureComponent =
    std::variant<LebesgueComponent, AtomComponent, ExpDensityComponent, GridDensityComponent>;

class InitialMeasure {
public:
    InitialMeasure() = default;

    static InitialMeasure lebesgue(double scale = 1.0);
    static InitialMeasure atom(double location, double mass);
    static InitialMeasure delta() { return atom(0.0, 1.0); }
    static InitialMeasure exp_density(double rate);
    static InitialMeasure grid(std::vector<double> x, std::vector<double> density);

    void add(MeasureComponent c) { components_.push_back(std::move(c)); }
    const std::vector<MeasureComponent>& components() const { return components_; }
    bool empty() const { return components_.empty(); }

    // Throws std::domain_error for inadmissible data (non-finite parameters,
    // unsorted grids, non-Gaussian-integrable tails).
    void validate() const;

    bool nonnegative() const;
    InitialMeasure abs() const;  // |mu| (Jordan decomposition total variation)

    // sup{ s : int exp(s|x|) |mu|(dx) < inf }: +inf for compactly supported
    // measures, 0 for Lebesgue, -rate for decaying exponential densities.
    double exp_rate_sup() const;

    // Fast paths for the closed-form specializations.
    const LebesgueComponent* single_lebesgue() const;
    const AtomComponent* single_atom() const;
    const ExpDensityComponent* single_exp() const;
    bool atoms_only() const;

private:
    std::vector<MeasureComponent> components_;
};

// Homogeneous heat solution J0(t,x) = (mu * G_nu(t,.))(x), exact per
// component: Lebesgue -> scale, atoms -> mass G_nu(t, x - x0), exponential
// densities through the smoothed exponential, grids by exact per-segment
// Gaussian-moment integration.
double j0(const InitialMeasure& mu, double nu, double t, double x);
double log_j0(const InitialMeasure& mu, double nu, double t, double x);  // nonnegative mu

// J0 of |mu|; dominates |j0| pointwise.
double j0_star(const InitialMeasure& mu, double nu, double t, double x);

// Space-time convolution (J0^2 * K)(t,x), reduced over the measure pair
//   int_0^t ds int int G_{2nu}(s, z2-z1) G_{nu/2}(t, x - (z1+z2)/2)
//                     k_profile(t-s) mu(dz1) mu(dz2),
// with closed forms for pure Lebesgue (scale^2 H(t)) and a single atom
// (mass^2 (K - L0)/lam^2); other measures integrate the time layer with the
// sqrt-singular rule and the measure layers adaptively.
double j0_squared_conv_kernel(const InitialMeasure& mu, const KernelContext& ctx, double t,
                              double x, const QuadConfig& cfg = {});
double log_j0_squared_conv_kernel(const InitialMeasure& mu, const KernelContext& ctx, double t,
                                  double x, const QuadConfig& cfg = {});

// Same reduction against L_n instead of K; the n-th Picard increment.
double j0_squared_conv_ln(const InitialMeasure& mu, const KernelContext& ctx, int n, double t,
                          double x, const QuadConfig& cfg = {});

}  // namespace roughheat
