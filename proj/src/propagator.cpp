#include "breather/propagator.hpp"

#include <cmath>
#include <cstdlib>
#include <utility>

namespace breather {

namespace {

// e^{-i theta} as (cos, sin) pairs. For |theta| <= 0.05 an 8th-order
// polynomial pair is exact to double precision and keeps the hot loop free
// of libm calls; larger rotations take the library path.
inline void rotation(double theta, double& c, double& s) {
    const double t2 = theta * theta;
    if (t2 <= 0.0025) {
        c = 1.0 + t2 * (-0.5 + t2 * (1.0 / 24 + t2 * (-1.0 / 720 + t2 / 40320)));
        s = theta *
            (1.0 + t2 * (-1.0 / 6 +
                         t2 * (1.0 / 120 + t2 * (-1.0 / 5040 + t2 / 362880))));
    } else {
        c = std::cos(theta);
        s = std::sin(theta);
    }
}

inline void rotate_amp(Complex& a, double theta) {
    double c, s;
    rotation(theta, c, s);
    const double re = a.real(), im = a.imag();
    a = Complex(re * c + im * s, im * c - re * s);  // a * e^{-i theta}
}

// Prefactored Crank-Nicolson solve for the constant tridiagonal
// (I + i dt H / 2) with H = -(1/2) d^2/dx^2 on the interior points.
struct CnWorkspace {
    int m = 0;  // interior size
    Complex off;
    Complex bdiag;  // diagonal of (I - i dt H / 2)
    Complex boff;
    std::vector<Complex> inv_piv;
    std::vector<Complex> cprime;
    std::vector<Complex> rhs;

    CnWorkspace(int n_points, double dt, double dx) {
        m = n_points - 2;
        const double sigma = dt / (4.0 * dx * dx);
        const Complex diag(1.0, 2.0 * sigma);
        off = Complex(0.0, -sigma);
        bdiag = std::conj(diag);
        boff = std::conj(off);
        inv_piv.resize(m);
        cprime.resize(m);
        rhs.resize(m);
        Complex piv = diag;
        for (int k = 0; k < m; ++k) {
            if (k > 0) piv = diag - off * cprime[k - 1];
            if (std::abs(piv) < 1e-300)
                throw SingularSystemError("crank-nicolson: zero pivot");
            inv_piv[k] = 1.0 / piv;
            cprime[k] = off * inv_piv[k];
        }
    }

    // psi spans the full grid; endpoints are held at zero.
    void step(std::vector<Complex>& psi) {
        const int n = static_cast<int>(psi.size());
        psi[0] = Complex(0, 0);
        psi[n - 1] = Complex(0, 0);
        for (int k = 0; k < m; ++k)
            rhs[k] = bdiag * psi[k + 1] + boff * (psi[k] + psi[k + 2]);
        rhs[0] *= inv_piv[0];
        for (int k = 1; k < m; ++k)
            rhs[k] = (rhs[k] - off * rhs[k - 1]) * inv_piv[k];
        psi[m] = rhs[m - 1];
        for (int k = m - 2; k >= 0; --k)
            psi[k + 1] = rhs[k] - cprime[k] * psi[k + 2];
    }
};

inline bool finite(const Complex& a) {
    return std::isfinite(a.real()) && std::isfinite(a.imag());
}

}  // namespace

NonlinearModel NonlinearModel::cubic(TimeFn g3) {
    NonlinearModel m;
    m.kind = Kind::polynomial;
    m.g.push_back(std::move(g3));
    return m;
}

NonlinearModel NonlinearModel::cubic_constant(double g3) {
    return cubic([g3](double) { return g3; });
}

NonlinearModel NonlinearModel::polynomial(std::vector<TimeFn> coeffs) {
    NonlinearModel m;
    m.kind = Kind::polynomial;
    m.g = std::move(coeffs);
    return m;
}

NonlinearModel NonlinearModel::nonpolynomial(TimeFn g) {
    NonlinearModel m;
    m.kind = Kind::nonpolynomial;
    m.g_np = std::move(g);
    return m;
}

double NonlinearModel::phase_rate(double density, double t) const {
    if (kind == Kind::nonpolynomial) {
        const double gn = g_np(t) * density;
        if (gn <= -1.0)
            throw NpseDomainError("nonpolynomial term: 1 + g|psi|^2 <= 0");
        return (1.0 + 1.5 * gn) / std::sqrt(1.0 + gn);
    }
    double acc = 0.0, pw = density;
    for (const TimeFn& gi : g) {
        acc += gi(t) * pw;
        pw *= density;
    }
    return acc;
}

std::vector<Complex> thomas_solve(const TridiagonalSystem& sys) {
    const std::size_t n = sys.diag.size();
    if (n == 0 || sys.lower.size() != n || sys.upper.size() != n ||
        sys.rhs.size() != n)
        throw CatalogError("thomas_solve: inconsistent lengths");
    std::vector<Complex> cp(n), y(n);
    Complex piv = sys.diag[0];
    if (std::abs(piv) < 1e-300)
        throw SingularSystemError("thomas_solve: zero pivot at row 0");
    cp[0] = sys.upper[0] / piv;
    y[0] = sys.rhs[0] / piv;
    for (std::size_t k = 1; k < n; ++k) {
        piv = sys.diag[k] - sys.lower[k] * cp[k - 1];
        if (std::abs(piv) < 1e-300)
            throw SingularSystemError("thomas_solve: zero pivot");
        cp[k] = sys.upper[k] / piv;
        y[k] = (sys.rhs[k] - sys.lower[k] * y[k - 1]) / piv;
    }
    for (std::size_t k = n - 1; k-- > 0;) y[k] -= cp[k] * y[k + 1];
    return y;
}

WaveField linear_half_step(const WaveField& field, double dt) {
    WaveField out = field;
    CnWorkspace cn(field.size(), dt, field.grid.dx());
    cn.step(out.amp);
    return out;
}

WaveField nonlinear_phase_step(const WaveField& field,
                               std::span<const double> V_values,
                               const NonlinearModel& model, double t,
                               double dt) {
    if (static_cast<int>(V_values.size()) != field.size())
        throw CatalogError("nonlinear_phase_step: V length mismatch");
    WaveField out = field;
    for (int k = 0; k < field.size(); ++k) {
        const double n = std::norm(out.amp[k]);
        rotate_amp(out.amp[k], (V_values[k] + model.phase_rate(n, t)) * dt);
    }
    return out;
}

PotentialProvider potential_from_plan(const ModulationPlan& plan) {
    return [plan](double t) { return potential_coefficients(plan, t); };
}

PotentialProvider fixed_potential(PotentialCoeffs coeffs) {
    return [coeffs](double) { return coeffs; };
}

namespace {

// One diagonal sub-flow of duration dt with coefficients frozen at time t.
// Specialized loops keep the cubic path branch-free.
void apply_phase(std::vector<Complex>& psi, const SpatialGrid& grid,
                 const PotentialCoeffs& pc, const NonlinearModel& model,
                 double t, double dt, std::vector<double>& gs) {
    const int n = static_cast<int>(psi.size());
    const double f1 = pc.f1, f2 = pc.f2, f3 = pc.f3;
    const double x0 = grid.x_min, dx = grid.dx();
    if (model.kind == NonlinearModel::Kind::polynomial) {
        gs.resize(model.g.size());
        for (std::size_t i = 0; i < model.g.size(); ++i) gs[i] = model.g[i](t);
        if (gs.size() == 1) {
            const double g3 = gs[0];
            for (int k = 0; k < n; ++k) {
                const double x = x0 + k * dx;
                const double nk = std::norm(psi[k]);
                rotate_amp(psi[k], ((f1 * x + f2) * x + f3 + g3 * nk) * dt);
            }
        } else {
            for (int k = 0; k < n; ++k) {
                const double x = x0 + k * dx;
                const double nk = std::norm(psi[k]);
                double P = 0.0, pw = nk;
                for (double gi : gs) {
                    P += gi * pw;
                    pw *= nk;
                }
                rotate_amp(psi[k], ((f1 * x + f2) * x + f3 + P) * dt);
            }
        }
    } else {
        const double gt = model.g_np(t);
        for (int k = 0; k < n; ++k) {
            const double x = x0 + k * dx;
            const double nk = std::norm(psi[k]);
            const double gn = gt * nk;
            if (gn <= -1.0)
                throw NpseDomainError("nonpolynomial term: 1 + g|psi|^2 <= 0");
            const double P = (1.0 + 1.5 * gn) / std::sqrt(1.0 + gn);
            rotate_amp(psi[k], ((f1 * x + f2) * x + f3 + P) * dt);
        }
    }
}

}  // namespace

WaveField propagate(WaveField field, const PotentialProvider& potential,
                    const NonlinearModel& model, const SolverConfig& config,
                    double t0, double t1, const Observer& observer) {
    if (!(t1 > t0)) throw CatalogError("propagate: t1 must exceed t0");
    if (!(config.dt > 0)) throw CatalogError("propagate: dt must be positive");
    if (config.snapshot_stride < 1)
        throw CatalogError("propagate: snapshot_stride must be >= 1");

    const double dt = config.dt;
    const long long steps = std::llround((t1 - t0) / dt);
    field.amp.front() = Complex(0, 0);
    field.amp.back() = Complex(0, 0);

    const double norm0 = field_norm(field);
    const auto health = [&](double t) {
        for (const Complex& a : field.amp)
            if (!finite(a))
                throw BlowUpError("propagate: non-finite amplitude at t = " +
                                  std::to_string(t));
        if (field_norm(field) > 10.0 * norm0)
            throw BlowUpError("propagate: norm grew beyond 10x at t = " +
                              std::to_string(t));
    };

    if (observer) observer(t0, field);
    if (steps == 0) return field;

    CnWorkspace cn(field.size(), dt, field.grid.dx());
    std::vector<double> gs;

    apply_phase(field.amp, field.grid, potential(t0), model, t0, dt / 2, gs);
    for (long long s = 0; s < steps; ++s) {
        const double tn = t0 + (s + 1) * dt;
        cn.step(field.amp);
        const bool last = (s + 1 == steps);
        const bool observe = ((s + 1) % config.snapshot_stride == 0) || last;
        const PotentialCoeffs pc = potential(tn);
        if (last) {
            apply_phase(field.amp, field.grid, pc, model, tn, dt / 2, gs);
        } else if (observe) {
            apply_phase(field.amp, field.grid, pc, model, tn, dt / 2, gs);
            if (observer) observer(tn, field);
            health(tn);
            apply_phase(field.amp, field.grid, pc, model, tn, dt / 2, gs);
        } else {
            // closing and reopening half phases share the same coefficients
            // and the same |psi|, so they fuse into one full rotation
            apply_phase(field.amp, field.grid, pc, model, tn, dt, gs);
        }
    }
    const double t_end = t0 + steps * dt;
    health(t_end);
    if (observer) observer(t_end, field);
    return field;
}

}  // namespace breather
