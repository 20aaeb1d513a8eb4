#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "arm/config.hpp"
#include "arm/engine.hpp"
#include "arm/errors.hpp"
#include "arm/metrics.hpp"
#include "arm/rng.hpp"

namespace arm {

/// Worker count: ARM_THREADS if set and positive, else hardware concurrency.
inline std::size_t default_workers()
{
    if (const char* env = std::getenv("ARM_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) {
            return static_cast<std::size_t>(v);
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Evaluates fn(i) for i in [0, count) on `workers` threads. Results land in
/// slot i regardless of completion order. The first exception is rethrown
/// after all workers stop.
template <class Fn>
auto parallel_map(std::size_t count, std::size_t workers, Fn fn) -> std::vector<decltype(fn(std::size_t{}))>
{
    using Result = decltype(fn(std::size_t{}));
    std::vector<Result> results(count);
    workers = std::max<std::size_t>(1, std::min(workers == 0 ? default_workers() : workers, count));

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count || failed.load()) {
                return;
            }
            try {
                results[i] = fn(i);
            }
            catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
                failed = true;
            }
        }
    };

    if (workers == 1) {
        work();
    }
    else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }
    return results;
}

/// One seed per iteration, shared by every cell of every sweep with this master seed.
inline std::vector<std::uint64_t> derive_seed_list(std::uint64_t master_seed, std::size_t iterations)
{
    std::vector<std::uint64_t> seeds(iterations);
    std::uint64_t state = master_seed;
    for (auto& s : seeds) {
        s = splitmix64(state);
    }
    return seeds;
}

/// Names accepted as sweep axes.
inline const std::vector<std::string>& sweep_parameters()
{
    static const std::vector<std::string> names{
        "tolerance",  "responsiveness",     "exposure",       "exposure_1", "exposure_2",
        "steepness",  "self_interest_prob", "shock_strength", "shock_step",
    };
    return names;
}

/// Sets one sweepable field. Range checks are left to SimConfig::validate.
inline void apply_parameter(SimConfig& cfg, std::string_view name, double value)
{
    auto as_step = [&] {
        if (!(value >= 0.0) || value != std::floor(value)) {
            throw ConfigError(std::string(name), "must be a nonnegative integer");
        }
        return static_cast<std::uint64_t>(value);
    };
    auto ensure_shock = [&]() -> Shock& {
        if (!cfg.shock) {
            cfg.shock = Shock{std::vector<double>(cfg.n_dims, 0.0), 0};
        }
        return *cfg.shock;
    };

    if (name == "tolerance") {
        cfg.tolerance = value;
    }
    else if (name == "responsiveness") {
        cfg.responsiveness = value;
    }
    else if (name == "exposure") {
        cfg.exposure.assign(cfg.n_dims, value);
    }
    else if (name == "exposure_1" || name == "exposure_2") {
        const std::size_t dim = name == "exposure_1" ? 0 : 1;
        if (dim >= cfg.exposure.size()) {
            throw ConfigError(std::string(name), "config has too few dimensions");
        }
        cfg.exposure[dim] = value;
    }
    else if (name == "steepness") {
        cfg.rule = SarRule{value};
    }
    else if (name == "self_interest_prob") {
        cfg.self_interest_prob = value;
    }
    else if (name == "shock_strength") {
        ensure_shock().strength.assign(cfg.n_dims, value);
    }
    else if (name == "shock_step") {
        ensure_shock().at_step = as_step();
    }
    else {
        throw ConfigError(std::string(name), "not a sweepable parameter");
    }
}

struct SweepAxis
{
    std::string parameter;
    std::vector<double> values;
    bool operator==(const SweepAxis&) const = default;
};

struct SweepSpec
{
    SimConfig base;
    std::vector<SweepAxis> axes;  // one or two
    std::size_t iterations = 20;
    std::uint64_t master_seed = 0;
    bool operator==(const SweepSpec&) const = default;
};

struct SweepCell
{
    std::vector<double> axis_values;  // one per axis
    std::vector<double> finals;       // one per iteration
    CellSummary summary;
    bool operator==(const SweepCell&) const = default;
};

struct SweepResult
{
    std::vector<std::string> axis_names;
    std::vector<std::uint64_t> seed_list;
    std::vector<SweepCell> cells;  // ascending by axis values
    bool operator==(const SweepResult&) const = default;
};

namespace detail {

inline std::string describe_cell(const SweepSpec& spec, const std::vector<double>& values)
{
    std::string out;
    for (std::size_t a = 0; a < values.size(); ++a) {
        if (!out.empty()) {
            out += ", ";
        }
        out += spec.axes[a].parameter + "=" + std::to_string(values[a]);
    }
    return "cell (" + out + ")";
}

}  // namespace detail

/// Cell coordinates in canonical order: each axis sorted ascending, first axis major.
inline std::vector<std::vector<double>> sweep_cells(const SweepSpec& spec)
{
    if (spec.axes.empty() || spec.axes.size() > 2) {
        throw ConfigError("axes", "a sweep needs one or two axes");
    }
    std::vector<std::vector<double>> sorted_axes;
    for (const auto& axis : spec.axes) {
        if (axis.values.empty()) {
            throw ConfigError(axis.parameter, "axis has no values");
        }
        auto v = axis.values;
        std::sort(v.begin(), v.end());
        if (std::adjacent_find(v.begin(), v.end()) != v.end()) {
            throw ConfigError(axis.parameter, "duplicate axis value");
        }
        sorted_axes.push_back(std::move(v));
    }
    std::vector<std::vector<double>> cells;
    if (sorted_axes.size() == 1) {
        for (double x : sorted_axes[0]) {
            cells.push_back({x});
        }
    }
    else {
        for (double x : sorted_axes[0]) {
            for (double y : sorted_axes[1]) {
                cells.push_back({x, y});
            }
        }
    }
    return cells;
}

/// Config for one (cell, iteration) run.
inline SimConfig cell_config(const SweepSpec& spec, const std::vector<double>& values, std::uint64_t seed)
{
    SimConfig cfg = spec.base;
    for (std::size_t a = 0; a < values.size(); ++a) {
        apply_parameter(cfg, spec.axes[a].parameter, values[a]);
    }
    cfg.seed = seed;
    return cfg;
}

/// Runs every (cell, iteration) pair to base.max_steps and records the final
/// polarization. Output is identical for any worker count.
inline SweepResult run_sweep(const SweepSpec& spec, std::size_t workers = 0)
{
    if (spec.iterations < 1) {
        throw ConfigError("iterations", "must be positive");
    }
    SweepResult result;
    for (const auto& axis : spec.axes) {
        result.axis_names.push_back(axis.parameter);
    }
    result.seed_list = derive_seed_list(spec.master_seed, spec.iterations);
    const auto cells = sweep_cells(spec);

    // Validate up front so a bad cell aborts before any work is done.
    for (const auto& values : cells) {
        try {
            cell_config(spec, values, 0).validate();
        }
        catch (const ConfigError& e) {
            throw ConfigError(e.field(), detail::describe_cell(spec, values) + ": " + e.what());
        }
    }

    const std::size_t runs = cells.size() * spec.iterations;
    const auto finals = parallel_map(runs, workers, [&](std::size_t job) {
        const auto& values = cells[job / spec.iterations];
        const auto seed = result.seed_list[job % spec.iterations];
        try {
            return final_polarization(cell_config(spec, values, seed));
        }
        catch (const std::exception& e) {
            throw InitError(detail::describe_cell(spec, values) + ": " + e.what());
        }
    });

    for (std::size_t c = 0; c < cells.size(); ++c) {
        SweepCell cell;
        cell.axis_values = cells[c];
        cell.finals.assign(finals.begin() + static_cast<std::ptrdiff_t>(c * spec.iterations),
                           finals.begin() + static_cast<std::ptrdiff_t>((c + 1) * spec.iterations));
        cell.summary = aggregate_sweep_cell(cell.finals);
        result.cells.push_back(std::move(cell));
    }
    return result;
}

/// Values start, start+step, ... up to stop (inclusive within half a step),
/// each rounded to 1e-9 so that printed grids read 0.15 rather than 0.15000000000000002.
inline std::vector<double> grid(double start, double stop, double step)
{
    std::vector<double> out;
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 0.5)) + 1;
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(std::round((start + static_cast<double>(i) * step) * 1e9) / 1e9);
    }
    return out;
}

}  // namespace arm
