#include "breather/analytic.hpp"

#include <cmath>
#include <random>

namespace breather {

Complex satsuma_yajima(double zeta, double tau) {
    const Complex osc = std::polar(1.0, 4.0 * tau);
    const Complex phase = std::polar(1.0, 0.5 * tau);
    const double az = std::fabs(zeta);
    if (az <= 10.0) {
        const Complex num =
            4.0 * (std::cosh(3.0 * zeta) + 3.0 * osc * std::cosh(zeta));
        const double den =
            std::cosh(4.0 * zeta) + 4.0 * std::cosh(2.0 * zeta) + 3.0 * std::cos(4.0 * tau);
        return num * phase / den;
    }
    // Large |zeta|: divide through by cosh 4 zeta. With q = e^{-2|zeta|},
    // cosh k zeta / cosh 4 zeta = e^{(k-4)|zeta|} (1 + q^k) / (1 + q^4),
    // which never overflows.
    const double q = std::exp(-2.0 * az);
    const double q2 = q * q, q3 = q2 * q, q4 = q2 * q2;
    const double e1 = std::exp(-az);
    const double e3 = e1 * e1 * e1;
    const double e4 = e1 * e3;
    const Complex num =
        4.0 * (e1 * (1.0 + q3) + 3.0 * osc * e3 * (1.0 + q));
    const double den =
        (1.0 + q4) + 4.0 * e1 * e1 * (1.0 + q2) + 6.0 * std::cos(4.0 * tau) * e4;
    return num * phase / den;
}

WaveField modulated_psi(const ModulationPlan& plan, const SpatialGrid& grid,
                        double t) {
    const Kinematics k = kinematics(plan, t);
    WaveField out(grid);
    for (int i = 0; i < grid.n_points; ++i) {
        const double x = grid.x(i);
        const double zeta = k.a * x + k.b;
        const double phase =
            -(k.a_t / (2 * k.a)) * x * x - (k.b_t / k.a) * x + k.c;
        out.amp[i] = k.rho * std::polar(1.0, phase) * satsuma_yajima(zeta, k.tau);
    }
    return out;
}

double nlse_residual(const ComplexSampler& sampler, double G, double zeta_min,
                     double zeta_max, double tau_min, double tau_max,
                     double dzeta, double dtau, int n_zeta, int n_tau) {
    double worst = 0.0;
    for (int j = 0; j < n_tau; ++j) {
        const double tau =
            tau_min + (tau_max - tau_min) * j / static_cast<double>(n_tau - 1);
        for (int i = 0; i < n_zeta; ++i) {
            const double z =
                zeta_min + (zeta_max - zeta_min) * i / static_cast<double>(n_zeta - 1);
            const Complex f0 = sampler(z, tau);
            const Complex ft =
                (sampler(z, tau + dtau) - sampler(z, tau - dtau)) / (2 * dtau);
            const Complex fzz =
                (sampler(z + dzeta, tau) - 2.0 * f0 + sampler(z - dzeta, tau)) /
                (dzeta * dzeta);
            const Complex r =
                Complex(0, 1) * ft + 0.5 * fzz - G * std::norm(f0) * f0;
            worst = std::max(worst, std::abs(r));
        }
    }
    return worst;
}

double gpe_residual_probe(const std::function<WaveField(double)>& psi_at,
                          const std::function<double(double)>& V,
                          const std::function<double(double)>& P, double t,
                          double dt_probe) {
    const WaveField f0 = psi_at(t);
    const WaveField fp = psi_at(t + dt_probe);
    const WaveField fm = psi_at(t - dt_probe);
    const double dx = f0.grid.dx();
    const int n = f0.size();
    double worst = 0.0;
    for (int k = 3; k < n - 3; ++k) {
        const Complex psi_t = (fp.amp[k] - fm.amp[k]) / (2 * dt_probe);
        const Complex psi_xx =
            (f0.amp[k + 1] - 2.0 * f0.amp[k] + f0.amp[k - 1]) / (dx * dx);
        const Complex r = Complex(0, 1) * psi_t + 0.5 * psi_xx -
                          (V(f0.grid.x(k)) + P(std::norm(f0.amp[k]))) * f0.amp[k];
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

double gpe_residual(const ModulationPlan& plan, const NonlinearitySpec& spec,
                    const SpatialGrid& grid, double t_min, double t_max,
                    double dt_probe, int n_times, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    const auto psi_at = [&](double t) { return modulated_psi(plan, grid, t); };
    const int orders = static_cast<int>(spec.G.size());
    for (int s = 0; s < n_times; ++s) {
        const double u = (rng() >> 11) * 0x1.0p-53;
        // keep the central stencil inside [t_min, t_max]
        const double t = t_min + dt_probe + u * (t_max - t_min - 2 * dt_probe);
        const PotentialCoeffs pc = potential_coefficients(plan, t);
        std::vector<double> g(orders);
        for (int i = 1; i <= orders; ++i) g[i - 1] = spec.strength(i, plan, t);
        const auto V = [&pc](double x) { return (pc.f1 * x + pc.f2) * x + pc.f3; };
        const auto P = [&g](double n) {
            double acc = 0.0, pw = n;
            for (double gi : g) { acc += gi * pw; pw *= n; }
            return acc;
        };
        worst = std::max(worst, gpe_residual_probe(psi_at, V, P, t, dt_probe));
    }
    return worst;
}

}  // namespace breather
