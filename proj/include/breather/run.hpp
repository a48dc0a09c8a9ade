#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "breather/observables.hpp"
#include "breather/scenarios.hpp"

namespace breather {

struct RunConfig {
    std::string scenario;
    std::optional<double> dt;
    std::optional<double> dx;
    std::optional<std::pair<double, double>> box;
    std::optional<double> horizon;
    double perturb_amplitude = 0.0;
    std::uint64_t seed = 0;
    std::optional<int> snapshot_stride;
    bool emit_field_snapshots = false;
    std::optional<std::string> compare;  // "cubic": run a cubic twin and emit delays
    std::filesystem::path out_dir = ".";
};

struct TraceRecord {
    double t;
    double max_density;
    double norm;
    double com;
    double rms_width;
};

struct RunResult {
    std::vector<TraceRecord> trace;
    std::vector<TraceRecord> compare_trace;  // twin trace in compare mode
    std::optional<BreathingReport> report;
    nlohmann::json summary;
    std::filesystem::path trace_csv;
    std::filesystem::path summary_json;
};

/// Propagate a scenario without touching the filesystem. The trace observer
/// always runs; extra_observer (if any) is invoked at the same instants.
std::vector<TraceRecord> propagate_scenario(
    const ScenarioSpec& scenario, const RunConfig& config,
    std::optional<ModelKind> model_override = {},
    const Observer& extra_observer = {});

/// Full pipeline: propagate, extract metrics, write trace CSV + summary JSON
/// (and the comparison / stability artifacts when requested).
RunResult run(const RunConfig& config);

TimeSeries trace_series(const std::vector<TraceRecord>& trace);
TimeSeries trace_com_series(const std::vector<TraceRecord>& trace);

}  // namespace breather
