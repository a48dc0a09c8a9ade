#include "breather/field.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace breather {

namespace {
constexpr double kDegenerateNorm = 1e-12;
}

SpatialGrid::SpatialGrid(double x_min_, double x_max_, int n_points_)
    : x_min(x_min_), x_max(x_max_), n_points(n_points_) {
    if (!(x_min < x_max)) throw CatalogError("grid: x_min must be < x_max");
    if (n_points < 3) throw CatalogError("grid: need at least 3 points");
}

WaveField::WaveField(const SpatialGrid& g, std::vector<Complex> a)
    : grid(g), amp(std::move(a)) {
    if (static_cast<int>(amp.size()) != grid.n_points)
        throw CatalogError("field: amplitude count != n_points");
}

TimeSeries::TimeSeries(std::vector<double> t, std::vector<double> v)
    : times(std::move(t)), values(std::move(v)) {
    if (times.size() != values.size())
        throw CatalogError("time series: length mismatch");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw CatalogError("time series: times must strictly increase");
}

void TimeSeries::push_back(double t, double v) {
    if (!times.empty() && !(t > times.back()))
        throw CatalogError("time series: times must strictly increase");
    times.push_back(t);
    values.push_back(v);
}

double field_norm(const WaveField& field) {
    const double dx = field.grid.dx();
    double sum = 0.0;
    for (const Complex& a : field.amp) sum += std::norm(a);
    sum -= 0.5 * (std::norm(field.amp.front()) + std::norm(field.amp.back()));
    return sum * dx;
}

double max_density(const WaveField& field) {
    double m = 0.0;
    for (const Complex& a : field.amp) m = std::max(m, std::norm(a));
    return m;
}

Moments moments(const WaveField& field) {
    const double dx = field.grid.dx();
    const int n = field.size();
    double s0 = 0.0, s1 = 0.0;
    for (int k = 0; k < n; ++k) {
        const double w = (k == 0 || k == n - 1) ? 0.5 : 1.0;
        const double d = w * std::norm(field.amp[k]);
        s0 += d;
        s1 += d * field.grid.x(k);
    }
    const double norm = s0 * dx;
    if (norm < kDegenerateNorm)
        throw DegenerateFieldError("moments: norm below 1e-12");
    const double com = s1 / s0;
    double s2 = 0.0;
    for (int k = 0; k < n; ++k) {
        const double w = (k == 0 || k == n - 1) ? 0.5 : 1.0;
        const double r = field.grid.x(k) - com;
        s2 += w * std::norm(field.amp[k]) * r * r;
    }
    return {norm, com, std::sqrt(s2 / s0)};
}

WaveField perturb(const WaveField& field, double amplitude, std::uint64_t seed) {
    if (amplitude < 0.0)
        throw DomainError("perturb: amplitude must be >= 0");
    WaveField out = field;
    std::mt19937_64 rng(seed);
    for (Complex& a : out.amp) {
        // top 53 bits -> [0,1), mapped to [-1,1); bit-exact on any platform
        const double u = 2.0 * ((rng() >> 11) * 0x1.0p-53) - 1.0;
        a *= (1.0 + amplitude * u);
    }
    return out;
}

}  // namespace breather
