#pragma once

#include <cstdint>
#include <functional>

#include "breather/field.hpp"
#include "breather/modulation.hpp"

namespace breather {

/// Two-soliton breather of the cubic NLSE with G = -1,
///   Phi = 4 (cosh 3z + 3 e^{4 i tau} cosh z) e^{i tau/2}
///         / (cosh 4z + 4 cosh 2z + 3 cos 4 tau).
/// Evaluated in a form that stays finite for any |zeta|; the denominator is
/// bounded below by 2, so there are no poles.
Complex satsuma_yajima(double zeta, double tau);

/// Modulated solution psi(x,t) = sqrt(a) e^{i eta} Phi(a x + b, tau) sampled
/// on the grid.
WaveField modulated_psi(const ModulationPlan& plan, const SpatialGrid& grid,
                        double t);

using ComplexSampler = std::function<Complex(double zeta, double tau)>;

/// Max |i Phi_tau + (1/2) Phi_zz - G |Phi|^2 Phi| over an n_zeta x n_tau probe
/// lattice, derivatives by second-order central differences with steps
/// dzeta, dtau.
double nlse_residual(const ComplexSampler& sampler, double G,
                     double zeta_min, double zeta_max, double tau_min,
                     double tau_max, double dzeta, double dtau,
                     int n_zeta = 201, int n_tau = 161);

/// Residual of one field family against i psi_t = -psi_xx/2 + V psi + P psi
/// at a single time; interior points only, excluding 3 points per side.
/// psi_at must be evaluable at t and t +/- dt_probe on the same grid.
double gpe_residual_probe(
    const std::function<WaveField(double)>& psi_at,
    const std::function<double(double x)>& V,
    const std::function<double(double density)>& P, double t, double dt_probe);

/// Max GPE residual of the modulated family over n_times random times in
/// [t_min, t_max] (seeded, reproducible). V and the polynomial strengths are
/// derived from the plan.
double gpe_residual(const ModulationPlan& plan, const NonlinearitySpec& spec,
                    const SpatialGrid& grid, double t_min, double t_max,
                    double dt_probe = 2e-4, int n_times = 20,
                    std::uint64_t seed = 12345);

}  // namespace breather
