#pragma once

#include <functional>
#include <span>
#include <vector>

#include "breather/field.hpp"
#include "breather/modulation.hpp"

namespace breather {

enum class Boundary { homogeneous_dirichlet };
enum class Splitting { strang };

struct SolverConfig {
    double dt = 1e-4;
    Boundary boundary = Boundary::homogeneous_dirichlet;
    Splitting splitting = Splitting::strang;
    int snapshot_stride = 100;
};

/// Polynomial P(n) = sum g_{2k+1}(t) n^k or the nonpolynomial term
/// (1 + (3/2) g n) / sqrt(1 + g n). The nonpolynomial rest value P(0) = 1 is
/// kept as written; it only contributes a global phase.
struct NonlinearModel {
    enum class Kind { polynomial, nonpolynomial };
    Kind kind = Kind::polynomial;
    std::vector<TimeFn> g;  // polynomial: g[k-1] = g_{2k+1}(t), k = 1..N
    TimeFn g_np;            // nonpolynomial strength g(t)

    static NonlinearModel cubic(TimeFn g3);
    static NonlinearModel cubic_constant(double g3);
    static NonlinearModel polynomial(std::vector<TimeFn> coeffs);
    static NonlinearModel nonpolynomial(TimeFn g);

    /// P at density n with coefficients sampled at time t. Throws
    /// NpseDomainError when 1 + g n <= 0.
    double phase_rate(double density, double t) const;
};

struct TridiagonalSystem {
    std::vector<Complex> lower;  // lower[0] unused
    std::vector<Complex> diag;
    std::vector<Complex> upper;  // upper[n-1] unused
    std::vector<Complex> rhs;
};

/// Thomas elimination; throws SingularSystemError on a vanishing pivot.
std::vector<Complex> thomas_solve(const TridiagonalSystem& sys);

/// Crank-Nicolson step of duration dt for i psi_t = -(1/2) psi_xx with
/// homogeneous Dirichlet ends (boundary values treated as zero). Unitary in
/// the discrete l2 norm up to round-off.
WaveField linear_half_step(const WaveField& field, double dt);

/// Diagonal flow psi_k -> psi_k exp(-i (V_k + P(|psi_k|^2)) dt); exact since
/// |psi_k| is conserved. V_values holds the potential sampled per point.
WaveField nonlinear_phase_step(const WaveField& field,
                               std::span<const double> V_values,
                               const NonlinearModel& model, double t,
                               double dt);

using PotentialProvider = std::function<PotentialCoeffs(double t)>;
using Observer = std::function<void(double t, const WaveField& field)>;

PotentialProvider potential_from_plan(const ModulationPlan& plan);
PotentialProvider fixed_potential(PotentialCoeffs coeffs);

/// Strang-split propagation from t0 to t1 in round((t1-t0)/dt) steps:
/// half phase at t, full CN step, half phase at t + dt. The observer (if any)
/// fires at step 0, every snapshot_stride steps, and at the final step.
/// Aborts with BlowUpError on non-finite amplitudes or norm growth beyond
/// 10x the initial norm.
WaveField propagate(WaveField field, const PotentialProvider& potential,
                    const NonlinearModel& model, const SolverConfig& config,
                    double t0, double t1, const Observer& observer = {});

}  // namespace breather
