#include "breather/run.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "breather/version.hpp"

namespace breather {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void require_stream(const std::ofstream& os, const std::filesystem::path& p) {
    if (!os) throw IoError("cannot write " + p.string());
}

struct EnvelopeBounds {
    double lo, hi;
};

EnvelopeBounds envelope(const std::vector<TraceRecord>& trace) {
    double mn = trace.front().max_density, mx = mn;
    for (const auto& r : trace) {
        mn = std::min(mn, r.max_density);
        mx = std::max(mx, r.max_density);
    }
    return {mn, mx};
}

}  // namespace

TimeSeries trace_series(const std::vector<TraceRecord>& trace) {
    TimeSeries out;
    for (const auto& r : trace) out.push_back(r.t, r.max_density);
    return out;
}

TimeSeries trace_com_series(const std::vector<TraceRecord>& trace) {
    TimeSeries out;
    for (const auto& r : trace) out.push_back(r.t, r.com);
    return out;
}

std::vector<TraceRecord> propagate_scenario(const ScenarioSpec& scenario,
                                            const RunConfig& config,
                                            std::optional<ModelKind> model_override,
                                            const Observer& extra_observer) {
    const double horizon = config.horizon.value_or(scenario.default_horizon);
    const SpatialGrid grid = scenario.grid_for(horizon, config.box, config.dx);

    SolverConfig solver;
    solver.dt = config.dt.value_or(scenario.default_dt);
    solver.snapshot_stride = config.snapshot_stride.value_or(100);

    WaveField init = modulated_psi(scenario.plan, grid, 0.0);
    if (config.perturb_amplitude > 0.0)
        init = perturb(init, config.perturb_amplitude, config.seed);

    NonlinearModel model = scenario.nonlinear_model();
    if (model_override) {
        ScenarioSpec twin = scenario;
        twin.model = *model_override;
        model = twin.nonlinear_model();
    }

    std::vector<TraceRecord> trace;
    trace.reserve(static_cast<std::size_t>(horizon / (solver.dt * solver.snapshot_stride)) + 2);
    const Observer obs = [&trace, &extra_observer](double t, const WaveField& f) {
        const Moments m = moments(f);
        trace.push_back({t, max_density(f), m.norm, m.center_of_mass, m.rms_width});
        if (extra_observer) extra_observer(t, f);
    };
    propagate(std::move(init), scenario.potential_provider(), model, solver, 0.0,
              horizon, obs);
    return trace;
}

namespace {

void write_trace_csv(const std::filesystem::path& p,
                     const std::vector<TraceRecord>& trace) {
    std::ofstream os(p);
    require_stream(os, p);
    os << "t,max_density,norm,com,rms_width\n";
    for (const auto& r : trace)
        os << fmt(r.t) << ',' << fmt(r.max_density) << ',' << fmt(r.norm) << ','
           << fmt(r.com) << ',' << fmt(r.rms_width) << '\n';
    if (!os.flush()) throw IoError("cannot write " + p.string());
}

nlohmann::json report_json(const BreathingReport& r) {
    return {{"period", r.period},
            {"frequency", r.frequency},
            {"period_stddev", r.period_stddev},
            {"amplitude_min", r.amplitude_min},
            {"amplitude_max", r.amplitude_max},
            {"fwhm_time", r.fwhm_time},
            {"fwhm_level_floor", r.fwhm_level_floor},
            {"peak_times", r.peak_times}};
}

nlohmann::json expected_json(const ExpectedMetrics& e) {
    nlohmann::json j{{"period", e.period},
                     {"period_rtol", e.period_rtol},
                     {"frequency", e.frequency},
                     {"frequency_rtol", e.frequency_rtol},
                     {"fwhm", e.fwhm},
                     {"fwhm_rtol", e.fwhm_rtol}};
    if (std::isfinite(e.amplitude_min)) {
        j["amplitude_min"] = e.amplitude_min;
        j["amplitude_max"] = e.amplitude_max;
        j["amplitude_rtol"] = e.amplitude_rtol;
    }
    return j;
}

}  // namespace

RunResult run(const RunConfig& config) {
    const ScenarioSpec scenario = build_scenario(config.scenario);
    if (config.compare && *config.compare != "cubic")
        throw CatalogError("unsupported --compare mode '" + *config.compare + "'");
    if (config.compare && scenario.model != ModelKind::nonpolynomial)
        throw CatalogError("--compare cubic needs a nonpolynomial scenario");

    const double horizon = config.horizon.value_or(scenario.default_horizon);
    const SpatialGrid grid = scenario.grid_for(horizon, config.box, config.dx);
    const double dt = config.dt.value_or(scenario.default_dt);
    const int stride = config.snapshot_stride.value_or(100);
    const bool stability_mode = config.perturb_amplitude > 0.0;

    std::error_code ec;
    std::filesystem::create_directories(config.out_dir, ec);
    if (ec) throw IoError("cannot create " + config.out_dir.string());

    RunResult result;
    if (config.emit_field_snapshots) {
        // field snapshots are opt-in; at the default stride they stay modest
        const auto p = config.out_dir / "fields.csv";
        std::ofstream os(p);
        require_stream(os, p);
        os << "t,x,re,im,density\n";
        const Observer field_obs = [&os](double t, const WaveField& f) {
            for (int k = 0; k < f.size(); ++k)
                os << fmt(t) << ',' << fmt(f.grid.x(k)) << ','
                   << fmt(f.amp[k].real()) << ',' << fmt(f.amp[k].imag()) << ','
                   << fmt(std::norm(f.amp[k])) << '\n';
        };
        result.trace = propagate_scenario(scenario, config, {}, field_obs);
        if (!os.flush()) throw IoError("cannot write " + p.string());
    } else {
        result.trace = propagate_scenario(scenario, config);
    }

    nlohmann::json summary;
    summary["schema"] = 1;
    summary["version"] = kVersion;
    summary["scenario"] = {
        {"name", scenario.name},
        {"model", scenario.model == ModelKind::cubic ? "cubic" : "nonpolynomial"},
        {"G3", scenario.nonlinearity.G3()},
        {"experimental", scenario.experimental},
    };
    if (scenario.expected) summary["scenario"]["expected"] = expected_json(*scenario.expected);
    summary["grid"] = {{"x_min", grid.x_min},
                       {"x_max", grid.x_max},
                       {"n_points", grid.n_points},
                       {"dx", grid.dx()}};
    summary["solver"] = {{"dt", dt},
                         {"boundary", "homogeneous_dirichlet"},
                         {"splitting", "strang"},
                         {"snapshot_stride", stride}};
    summary["horizon"] = horizon;
    summary["seed"] = config.seed;
    summary["perturb_amplitude"] = config.perturb_amplitude;
    summary["residual_self_check"] = scenario.experimental
                                         ? nlohmann::json()
                                         : nlohmann::json(scenario.residual_self_check());
    summary["generated_at"] =
        static_cast<std::int64_t>(std::chrono::duration_cast<std::chrono::seconds>(
            std::chrono::system_clock::now().time_since_epoch()).count());

    // breathing metrics; tolerated as absent for stability runs whose horizon
    // holds fewer than 3 peaks
    try {
        result.report = breathing_metrics(trace_series(result.trace));
        summary["metrics"] = report_json(*result.report);
    } catch (const InsufficientDataError& e) {
        if (!stability_mode) throw;
        summary["metrics"] = nullptr;
        summary["metrics_note"] = e.what();
    }
    summary["com_deviation_from_plan"] =
        com_deviation(trace_com_series(result.trace), scenario.plan);

    if (stability_mode) {
        RunConfig base = config;
        base.perturb_amplitude = 0.0;
        const auto unperturbed = propagate_scenario(scenario, base);
        const EnvelopeBounds env = envelope(unperturbed);
        bool stable = true;
        for (const auto& r : result.trace)
            if (r.max_density < 0.8 * env.lo || r.max_density > 1.2 * env.hi) {
                stable = false;
                break;
            }
        summary["stability"] = {{"verdict", stable ? "stable" : "unstable"},
                                {"unperturbed_min", env.lo},
                                {"unperturbed_max", env.hi},
                                {"allowed_min", 0.8 * env.lo},
                                {"allowed_max", 1.2 * env.hi}};
    }

    if (config.compare) {
        result.compare_trace =
            propagate_scenario(scenario, config, ModelKind::cubic);
        const auto p = config.out_dir / "trace_cubic.csv";
        write_trace_csv(p, result.compare_trace);

        const auto delays = peak_delay(trace_series(result.trace),
                                       trace_series(result.compare_trace));
        const auto ref_peaks = refined_maxima(trace_series(result.trace));
        const auto dp = config.out_dir / "delays.csv";
        std::ofstream os(dp);
        require_stream(os, dp);
        os << "peak_index,t_reference,t_candidate,delay\n";
        for (const auto& d : delays)
            os << d.peak_index << ',' << fmt(ref_peaks[d.peak_index].t) << ','
               << fmt(ref_peaks[d.peak_index].t + d.delay) << ',' << fmt(d.delay)
               << '\n';
        if (!os.flush()) throw IoError("cannot write " + dp.string());

        double max_gn = 0.0;
        const double G3 = scenario.nonlinearity.G3();
        for (const auto& r : result.trace)
            max_gn = std::max(max_gn,
                              std::fabs(G3 * scenario.plan.a(r.t) * r.max_density));
        nlohmann::json dj = nlohmann::json::array();
        for (const auto& d : delays)
            dj.push_back({{"peak_index", d.peak_index}, {"delay", d.delay}});
        summary["comparison"] = {{"against", "cubic"},
                                 {"max_g_density", max_gn},
                                 {"delays", dj}};
    }

    result.trace_csv = config.out_dir / "trace.csv";
    write_trace_csv(result.trace_csv, result.trace);
    result.summary_json = config.out_dir / "summary.json";
    {
        std::ofstream os(result.summary_json);
        require_stream(os, result.summary_json);
        os << summary.dump(2) << '\n';
        if (!os.flush()) throw IoError("cannot write " + result.summary_json.string());
    }
    result.summary = std::move(summary);
    return result;
}

}  // namespace breather
