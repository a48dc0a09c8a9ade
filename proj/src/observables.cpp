#include "breather/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace breather {

namespace {

// Vertex of the parabola through three (t, v) samples; tolerates nonuniform
// spacing. Falls back to the middle sample when the curvature vanishes.
RefinedExtremum refine(const TimeSeries& s, std::size_t i) {
    const double t0 = s.times[i - 1], t1 = s.times[i], t2 = s.times[i + 1];
    const double v0 = s.values[i - 1], v1 = s.values[i], v2 = s.values[i + 1];
    const double f01 = (v1 - v0) / (t1 - t0);
    const double f12 = (v2 - v1) / (t2 - t1);
    const double f012 = (f12 - f01) / (t2 - t0);
    if (f012 == 0.0) return {t1, v1, i};
    double ts = 0.5 * (t0 + t1) - f01 / (2 * f012);
    ts = std::clamp(ts, t0, t2);
    const double vs = v0 + f01 * (ts - t0) + f012 * (ts - t0) * (ts - t1);
    return {ts, vs, i};
}

std::vector<RefinedExtremum> extrema(const TimeSeries& s, bool maxima) {
    std::vector<RefinedExtremum> out;
    const auto& v = s.values;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        const bool hit = maxima ? (v[i - 1] < v[i] && v[i] >= v[i + 1])
                                : (v[i - 1] > v[i] && v[i] <= v[i + 1]);
        if (hit) out.push_back(refine(s, i));
    }
    return out;
}

double median_of(std::vector<double> v) {
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + mid, v.end());
    double m = v[mid];
    if (v.size() % 2 == 0) {
        std::nth_element(v.begin(), v.begin() + mid - 1, v.end());
        m = 0.5 * (m + v[mid - 1]);
    }
    return m;
}

// Full width of the peak refined around sample index i at the given level;
// crossing times by linear interpolation. Returns 0 when a flank runs off
// the series.
double width_at_level(const TimeSeries& s, std::size_t i, double level) {
    const auto& v = s.values;
    const auto& t = s.times;
    std::size_t l = i;
    while (l > 0 && v[l - 1] >= level) --l;
    if (l == 0) return 0.0;
    const double tl =
        t[l - 1] + (level - v[l - 1]) * (t[l] - t[l - 1]) / (v[l] - v[l - 1]);
    std::size_t r = i;
    while (r + 1 < v.size() && v[r + 1] >= level) ++r;
    if (r + 1 == v.size()) return 0.0;
    const double tr =
        t[r] + (level - v[r]) * (t[r + 1] - t[r]) / (v[r + 1] - v[r]);
    return tr - tl;
}

}  // namespace

std::vector<RefinedExtremum> refined_maxima(const TimeSeries& series) {
    return extrema(series, true);
}

std::vector<RefinedExtremum> refined_minima(const TimeSeries& series) {
    return extrema(series, false);
}

std::vector<RefinedExtremum> merge_close_extrema(
    std::vector<RefinedExtremum> ex, double min_separation) {
    if (ex.size() < 2) return ex;
    std::vector<RefinedExtremum> out;
    std::size_t begin = 0;
    for (std::size_t i = 1; i <= ex.size(); ++i) {
        if (i == ex.size() || ex[i].t - ex[i - 1].t >= min_separation) {
            double tsum = 0.0;
            RefinedExtremum best = ex[begin];
            for (std::size_t j = begin; j < i; ++j) {
                tsum += ex[j].t;
                if (ex[j].value > best.value) best = ex[j];
            }
            out.push_back({tsum / (i - begin), best.value, best.index});
            begin = i;
        }
    }
    return out;
}

BreathingReport breathing_metrics(const TimeSeries& series) {
    const auto peaks = refined_maxima(series);
    if (peaks.size() < 3)
        throw InsufficientDataError(
            "breathing_metrics: need at least 3 peaks, found " +
            std::to_string(peaks.size()));
    const auto troughs = refined_minima(series);

    std::vector<double> spacings(peaks.size() - 1);
    for (std::size_t i = 0; i + 1 < peaks.size(); ++i)
        spacings[i] = peaks[i + 1].t - peaks[i].t;
    const double period =
        std::accumulate(spacings.begin(), spacings.end(), 0.0) / spacings.size();
    double var = 0.0;
    for (double sp : spacings) var += (sp - period) * (sp - period);
    const double stddev =
        spacings.size() > 1 ? std::sqrt(var / (spacings.size() - 1)) : 0.0;

    BreathingReport rep;
    rep.period = period;
    rep.frequency = 1.0 / period;
    rep.period_stddev = stddev;
    rep.amplitude_max = peaks[0].value;
    for (const auto& p : peaks) rep.amplitude_max = std::max(rep.amplitude_max, p.value);
    rep.amplitude_min = troughs.empty() ? *std::min_element(series.values.begin(),
                                                            series.values.end())
                                        : troughs[0].value;
    for (const auto& p : troughs) rep.amplitude_min = std::min(rep.amplitude_min, p.value);

    // Temporal peak width at half the peak height above the floor. The floor
    // is the series median: it tracks the typical inter-peak level, stays put
    // when individual troughs drift, and scales correctly under v -> alpha v.
    const double med = median_of(series.values);
    rep.fwhm_level_floor = med;
    double wsum = 0.0;
    int wcount = 0;
    for (const auto& p : peaks) {
        if (p.value <= med) continue;
        const double w = width_at_level(series, p.index, med + 0.5 * (p.value - med));
        if (w > 0.0) {
            wsum += w;
            ++wcount;
        }
    }
    rep.fwhm_time = wcount ? wsum / wcount
                           : std::numeric_limits<double>::quiet_NaN();
    rep.peak_times.reserve(peaks.size());
    for (const auto& p : peaks) rep.peak_times.push_back(p.t);
    return rep;
}

TimeSeries com_track(
    const std::vector<std::pair<double, WaveField>>& snapshots) {
    TimeSeries out;
    for (const auto& [t, field] : snapshots)
        out.push_back(t, moments(field).center_of_mass);
    return out;
}

double com_deviation(const TimeSeries& track, const ModulationPlan& plan) {
    double worst = 0.0;
    for (std::size_t i = 0; i < track.size(); ++i) {
        const double expected = plan.center_of_mass(track.times[i]);
        worst = std::max(worst, std::fabs(track.values[i] - expected));
    }
    return worst;
}

std::vector<PeakDelay> peak_delay(const TimeSeries& reference,
                                  const TimeSeries& candidate) {
    const auto rp = refined_maxima(reference);
    const auto cp = refined_maxima(candidate);
    if (rp.size() != cp.size())
        throw AlignmentError("peak_delay: peak count mismatch (" +
                             std::to_string(rp.size()) + " vs " +
                             std::to_string(cp.size()) + ")");
    std::vector<PeakDelay> out;
    out.reserve(rp.size());
    for (std::size_t i = 0; i < rp.size(); ++i)
        out.push_back({i, cp[i].t - rp[i].t});
    return out;
}

}  // namespace breather
