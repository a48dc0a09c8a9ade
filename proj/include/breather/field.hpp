#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "breather/errors.hpp"

namespace breather {

using Complex = std::complex<double>;

/// Uniform 1D grid on [x_min, x_max], both endpoints included.
struct SpatialGrid {
    double x_min;
    double x_max;
    int n_points;

    SpatialGrid(double x_min, double x_max, int n_points);

    double dx() const { return (x_max - x_min) / (n_points - 1); }
    double x(int k) const { return x_min + k * dx(); }
};

/// Complex wavefunction sampled on a grid, one amplitude per point.
struct WaveField {
    SpatialGrid grid;
    std::vector<Complex> amp;

    explicit WaveField(const SpatialGrid& g) : grid(g), amp(g.n_points) {}
    WaveField(const SpatialGrid& g, std::vector<Complex> a);

    int size() const { return grid.n_points; }
};

/// Scalar time trace with strictly increasing sample times.
struct TimeSeries {
    std::vector<double> times;
    std::vector<double> values;

    TimeSeries() = default;
    TimeSeries(std::vector<double> t, std::vector<double> v);

    void push_back(double t, double v);
    std::size_t size() const { return times.size(); }
};

struct Moments {
    double norm;
    double center_of_mass;
    double rms_width;
};

/// Trapezoidal |psi|^2 integrals: norm, first moment, rms width about it.
/// Throws DegenerateFieldError when the norm is below 1e-12.
Moments moments(const WaveField& field);

/// Trapezoidal integral of |psi|^2 dx (no degeneracy check).
double field_norm(const WaveField& field);

double max_density(const WaveField& field);

/// Multiplicative noise psi_k *= (1 + amplitude * u_k), u_k ~ U[-1, 1)
/// drawn from a fixed-width generator so results are reproducible across
/// platforms for a given seed.
WaveField perturb(const WaveField& field, double amplitude, std::uint64_t seed);

}  // namespace breather
