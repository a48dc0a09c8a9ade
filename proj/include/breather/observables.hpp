#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "breather/field.hpp"
#include "breather/modulation.hpp"

namespace breather {

/// Extracted breathing quantities of a max-density trace.
struct BreathingReport {
    double period;
    double frequency;        // 1 / period
    double period_stddev;    // spread of the inter-peak spacings
    double amplitude_min;    // lowest refined trough
    double amplitude_max;    // highest refined peak
    double fwhm_time;        // mean peak width at half height above the median
    double fwhm_level_floor; // the median used as the width floor
    std::vector<double> peak_times;
};

struct RefinedExtremum {
    double t;
    double value;
    std::size_t index;  // sample index the extremum was refined around
};

/// Interior local maxima/minima refined by a 3-point parabola (handles
/// nonuniform sampling).
std::vector<RefinedExtremum> refined_maxima(const TimeSeries& series);
std::vector<RefinedExtremum> refined_minima(const TimeSeries& series);

/// Collapse clusters of extrema closer than min_separation to their centroid
/// time (value = cluster max). Standard minimum-distance peak filtering.
std::vector<RefinedExtremum> merge_close_extrema(
    std::vector<RefinedExtremum> extrema, double min_separation);

/// Period, frequency, envelope limits and temporal peak width of a breathing
/// trace. Requires at least 3 peaks, else InsufficientDataError.
BreathingReport breathing_metrics(const TimeSeries& series);

/// Center-of-mass track of a snapshot sequence.
TimeSeries com_track(const std::vector<std::pair<double, WaveField>>& snapshots);

/// Max |track(t) - (-b(t)/a(t))| over the track samples.
double com_deviation(const TimeSeries& track, const ModulationPlan& plan);

struct PeakDelay {
    std::size_t peak_index;
    double delay;  // candidate peak time - reference peak time
};

/// Pairwise delays of refined peaks; throws AlignmentError when the two
/// series do not contain the same number of peaks.
std::vector<PeakDelay> peak_delay(const TimeSeries& reference,
                                  const TimeSeries& candidate);

}  // namespace breather
