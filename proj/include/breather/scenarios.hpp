#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "breather/analytic.hpp"
#include "breather/modulation.hpp"
#include "breather/propagator.hpp"

namespace breather {

enum class ModelKind { cubic, nonpolynomial };

/// Reported targets with relative tolerances, used in summaries and the
/// acceptance suite.
struct ExpectedMetrics {
    double period, period_rtol;
    double frequency, frequency_rtol;
    double amplitude_min, amplitude_max, amplitude_rtol;
    double fwhm, fwhm_rtol;
};

struct ScenarioSpec {
    std::string name;
    ModulationPlan plan;
    NonlinearitySpec nonlinearity;
    ModelKind model;
    double default_dx;
    double default_dt;
    double default_horizon;  // metric-extraction horizon
    double box_margin;       // half-width beyond the center-of-mass range
    bool experimental = false;
    std::optional<ExpectedMetrics> expected;

    /// [min, max] of -b/a over [0, horizon].
    std::pair<double, double> com_range(double horizon) const;

    /// Box covering the traveling breather plus the decay margin.
    SpatialGrid grid_for(double horizon,
                         std::optional<std::pair<double, double>> box = {},
                         std::optional<double> dx = {}) const;

    NonlinearModel nonlinear_model() const;
    PotentialProvider potential_provider() const;

    /// Quick GPE residual of the analytic family on a refined probe grid.
    double residual_self_check(double t_max = 5.0, int n_times = 5) const;
};

/// Names accepted by build_scenario, in catalog order.
const std::vector<std::string>& scenario_names();

/// Construct a catalog scenario. Non-experimental scenarios are self-checked
/// against the GPE residual (< 5e-3) unless self_check is false; an unknown
/// name raises CatalogError.
ScenarioSpec build_scenario(const std::string& name, bool self_check = true);

}  // namespace breather
