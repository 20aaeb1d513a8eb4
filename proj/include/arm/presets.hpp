#pragma once

// Figure presets: the experiment behind each published figure as a set of
// single runs, sweeps and curve tables.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arm/config.hpp"
#include "arm/errors.hpp"
#include "arm/sweep.hpp"
#include "arm/text_format.hpp"

namespace arm {

/// One seeded trajectory; emits a time series and the configured snapshots.
struct RunJob
{
    std::string name;
    SimConfig config;
};

struct SweepJob
{
    std::string name;
    SweepSpec spec;
    bool boxplot = false;  // also emit Tukey box statistics
    bool fit = false;      // also fit a logistic curve to cell means (single axis)
};

/// Repulsion probability of the stochastic rule over distance, one column per steepness.
struct CurveJob
{
    std::string name;
    std::vector<double> steepness;
    double tolerance = 0.25;
    std::size_t n_dims = 1;
    std::size_t samples = 201;
};

struct Preset
{
    std::string id;
    std::string description;
    std::vector<RunJob> runs;
    std::vector<SweepJob> sweeps;
    std::vector<CurveJob> curves;
};

struct PresetOptions
{
    std::uint64_t master_seed = 0;
    std::optional<std::size_t> iterations;  // overrides the preset's iteration count
    double scale = 1.0;                     // multiplies every step count
};

inline const std::vector<std::string>& preset_ids()
{
    static const std::vector<std::string> ids{
        "fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9",
        "figS1", "figS2", "figS4", "figS5", "figS6", "figS7",
    };
    return ids;
}

/// Unimodal ideology histogram on 20 bins of width 0.05, used by the
/// empirical-initialization preset. Mean near 0.5, with a slightly heavier
/// right shoulder than the default normal initialization.
inline HistogramSpec reference_ideology_histogram()
{
    HistogramSpec h;
    h.bin_edges = grid(0.0, 1.0, 0.05);
    h.weights = {1, 2, 4, 7, 12, 20, 31, 44, 56, 63, 62, 55, 46, 37, 28, 19, 11, 6, 3, 1};
    return h;
}

namespace detail {

inline std::uint64_t scale_steps(std::uint64_t steps, double scale)
{
    return static_cast<std::uint64_t>(std::llround(static_cast<double>(steps) * scale));
}

inline SimConfig scaled(SimConfig cfg, double scale)
{
    cfg.max_steps = scale_steps(cfg.max_steps, scale);
    cfg.record_every = std::max<std::uint64_t>(1, scale_steps(cfg.record_every, scale));
    for (auto& s : cfg.snapshot_steps) {
        s = scale_steps(s, scale);
    }
    if (cfg.shock) {
        cfg.shock->at_step = scale_steps(cfg.shock->at_step, scale);
    }
    return cfg;
}

inline SimConfig base_config(std::uint64_t max_steps)
{
    SimConfig cfg;
    cfg.max_steps = max_steps;
    return cfg;
}

inline SimConfig base_config_2d(std::uint64_t max_steps)
{
    SimConfig cfg = base_config(max_steps);
    cfg.n_dims = 2;
    cfg.exposure = {0.1, 0.1};
    return cfg;
}

inline SweepJob make_sweep(std::string name, SimConfig base, std::vector<SweepAxis> axes)
{
    SweepJob job;
    job.name = std::move(name);
    job.spec.base = std::move(base);
    job.spec.axes = std::move(axes);
    return job;
}

inline std::vector<RunJob> runs_over(const std::string& prefix, const SimConfig& base, const std::string& parameter,
                                     const std::vector<double>& values)
{
    std::vector<RunJob> runs;
    for (double v : values) {
        SimConfig cfg = base;
        apply_parameter(cfg, parameter, v);
        runs.push_back({prefix + "_" + parameter + "=" + format_double(v), std::move(cfg)});
    }
    return runs;
}

inline Preset build_preset(const std::string& id)
{
    constexpr double inf = std::numeric_limits<double>::infinity();
    Preset p;
    p.id = id;

    if (id == "fig1") {
        p.description = "time series for T = 0.05, 0.15, ..., 0.95 over 2.5M steps";
        p.runs = runs_over("fig1", base_config(2'500'000), "tolerance", grid(0.05, 0.95, 0.1));
    }
    else if (id == "fig2") {
        p.description = "position snapshots for T = 0.25 and T = 0.35 at 0, 100k, 1M and 2.5M steps";
        SimConfig base = base_config(2'500'000);
        base.snapshot_steps = {0, 100'000, 1'000'000, 2'500'000};
        p.runs = runs_over("fig2", base, "tolerance", {0.25, 0.35});
    }
    else if (id == "fig3") {
        p.description = "T x R heatmap, 0.05..1.0 each, 1M steps";
        p.sweeps.push_back(make_sweep("fig3", base_config(1'000'000),
                                      {{"tolerance", grid(0.05, 1.0, 0.05)}, {"responsiveness", grid(0.05, 1.0, 0.05)}}));
    }
    else if (id == "fig4") {
        p.description = "T x E heatmap, T 0.05..1.0, E 0.05..0.5, 2M steps";
        p.sweeps.push_back(make_sweep("fig4", base_config(2'000'000),
                                      {{"tolerance", grid(0.05, 1.0, 0.05)}, {"exposure", grid(0.05, 0.5, 0.05)}}));
    }
    else if (id == "fig5") {
        p.description = "time series at T = 0.3 for E = 0.05..0.5 over 2.5M steps";
        SimConfig base = base_config(2'500'000);
        base.tolerance = 0.3;
        p.runs = runs_over("fig5", base, "exposure", grid(0.05, 0.5, 0.05));
    }
    else if (id == "fig6") {
        p.description = "2D time series with E1 = 0.1 and E2 = 0.05..0.5 over 2.5M steps, final snapshots";
        SimConfig base = base_config_2d(2'500'000);
        base.snapshot_steps = {2'500'000};
        p.runs = runs_over("fig6", base, "exposure_2", grid(0.05, 0.5, 0.05));
    }
    else if (id == "fig7") {
        p.description = "time series for self-interest P = 0..10% over 2.5M steps, final snapshots";
        SimConfig base = base_config(2'500'000);
        base.snapshot_steps = {2'500'000};
        p.runs = runs_over("fig7", base, "self_interest_prob", grid(0.0, 0.1, 0.01));
    }
    else if (id == "fig8") {
        p.description = "shock strength 0..0.8 at step 500k, 2.5M steps, snapshots around the shock";
        SimConfig base = base_config(2'500'000);
        base.shock = Shock{{0.0}, 500'000};
        base.snapshot_steps = {500'000, 501'000, 2'500'000};
        p.runs = runs_over("fig8", base, "shock_strength", grid(0.0, 0.8, 0.05));
    }
    else if (id == "fig9") {
        p.description = "shock strength x shock step heatmap, 2M steps";
        SimConfig base = base_config(2'000'000);
        base.shock = Shock{{0.0}, 100'000};
        p.sweeps.push_back(make_sweep("fig9", base,
                                      {{"shock_strength", grid(0.0, 0.8, 0.05)},
                                       {"shock_step", grid(100'000, 900'000, 100'000)}}));
    }
    else if (id == "figS1") {
        p.description = "empirical initialization: time series over T and final-variance sweeps for both initializers";
        SimConfig empirical = base_config(2'500'000);
        empirical.initializer = EmpiricalInit{reference_ideology_histogram()};
        p.runs = runs_over("figS1_empirical", empirical, "tolerance", grid(0.05, 0.95, 0.1));
        empirical.max_steps = 1'000'000;
        p.sweeps.push_back(make_sweep("figS1_normal", base_config(1'000'000), {{"tolerance", grid(0.05, 1.0, 0.05)}}));
        p.sweeps.push_back(make_sweep("figS1_empirical", empirical, {{"tolerance", grid(0.05, 1.0, 0.05)}}));
    }
    else if (id == "figS2") {
        p.description = "stochastic rule: repulsion curves, time series and 1.5M-step box plots over steepness";
        const std::vector<double> ks{2, 4, 8, 16, 32, 64, inf};
        p.curves.push_back({"figS2_repulsion_probability", ks, 0.25, 1, 201});
        SimConfig base = base_config(1'500'000);
        base.rule = SarRule{};
        p.runs = runs_over("figS2", base, "steepness", ks);
        auto sweep = make_sweep("figS2", base, {{"steepness", ks}});
        sweep.boxplot = true;
        p.sweeps.push_back(std::move(sweep));
    }
    else if (id == "figS4") {
        p.description = "single-axis sweeps of T, R and E at 1M steps with logistic fits";
        const SimConfig base = base_config(1'000'000);
        for (auto [name, axis] : {std::pair{"figS4_tolerance", SweepAxis{"tolerance", grid(0.05, 1.0, 0.05)}},
                                  std::pair{"figS4_responsiveness", SweepAxis{"responsiveness", grid(0.05, 1.0, 0.05)}},
                                  std::pair{"figS4_exposure", SweepAxis{"exposure", grid(0.05, 0.5, 0.05)}}}) {
            auto sweep = make_sweep(name, base, {axis});
            sweep.fit = true;
            p.sweeps.push_back(std::move(sweep));
        }
    }
    else if (id == "figS5") {
        p.description = "2D T x R heatmap, T 0.05..1.4, R 0.05..1.0, 1M steps";
        p.sweeps.push_back(make_sweep("figS5", base_config_2d(1'000'000),
                                      {{"tolerance", grid(0.05, 1.4, 0.05)}, {"responsiveness", grid(0.05, 1.0, 0.05)}}));
    }
    else if (id == "figS6") {
        p.description = "2D E1 x E2 heatmap, 0.05..0.5 each, 2M steps";
        p.sweeps.push_back(make_sweep("figS6", base_config_2d(2'000'000),
                                      {{"exposure_1", grid(0.05, 0.5, 0.05)}, {"exposure_2", grid(0.05, 0.5, 0.05)}}));
    }
    else if (id == "figS7") {
        p.description = "T x P heatmap, T 0.05..0.95, P 0..1, 2M steps";
        p.sweeps.push_back(make_sweep("figS7", base_config(2'000'000),
                                      {{"tolerance", grid(0.05, 0.95, 0.1)}, {"self_interest_prob", grid(0.0, 1.0, 0.05)}}));
    }
    else {
        std::string valid;
        for (const auto& v : preset_ids()) {
            valid += (valid.empty() ? "" : ", ") + v;
        }
        throw ConfigError("preset", "unknown figure id '" + id + "'; valid ids: " + valid);
    }
    return p;
}

}  // namespace detail

/// Preset `id` with seeds, iteration count and step scaling applied.
/// Single runs use the first seed of the master seed's list.
inline Preset make_preset(const std::string& id, const PresetOptions& opts = {})
{
    if (!(opts.scale > 0.0) || !std::isfinite(opts.scale)) {
        throw ConfigError("scale", "must be positive and finite");
    }
    if (opts.iterations && *opts.iterations < 1) {
        throw ConfigError("iterations", "must be positive");
    }
    Preset p = detail::build_preset(id);
    const std::uint64_t run_seed = derive_seed_list(opts.master_seed, 1).front();
    for (auto& run : p.runs) {
        run.config = detail::scaled(std::move(run.config), opts.scale);
        run.config.seed = run_seed;
    }
    for (auto& sweep : p.sweeps) {
        sweep.spec.base = detail::scaled(std::move(sweep.spec.base), opts.scale);
        sweep.spec.master_seed = opts.master_seed;
        if (opts.iterations) {
            sweep.spec.iterations = *opts.iterations;
        }
        for (auto& axis : sweep.spec.axes) {
            if (axis.parameter == "shock_step") {
                for (auto& v : axis.values) {
                    v = static_cast<double>(detail::scale_steps(static_cast<std::uint64_t>(v), opts.scale));
                }
            }
        }
    }
    return p;
}

}  // namespace arm
