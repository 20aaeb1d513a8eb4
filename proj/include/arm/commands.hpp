#pragma once

// Subcommand implementations behind the armsim tool. Each writes its
// artifacts plus manifest.json into an output directory.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "arm/config.hpp"
#include "arm/config_io.hpp"
#include "arm/csv.hpp"
#include "arm/dynamics.hpp"
#include "arm/engine.hpp"
#include "arm/errors.hpp"
#include "arm/logistic_fit.hpp"
#include "arm/presets.hpp"
#include "arm/sweep.hpp"
#include "arm/text_format.hpp"

namespace arm {

inline constexpr const char* kToolVersion = "1.0.0";

struct RunManifest
{
    std::string command;
    std::string config_echo;  // serialize_config text of the (base) config
    std::vector<std::filesystem::path> artifacts;
    std::string tool_version = kToolVersion;
    double wall_seconds = 0.0;
    nlohmann::ordered_json extra = nlohmann::ordered_json::object();

    nlohmann::ordered_json to_json() const
    {
        nlohmann::ordered_json j;
        j["command"] = command;
        j["tool_version"] = tool_version;
        j["wall_seconds"] = wall_seconds;
        j["config"] = config_echo;
        auto& files = j["artifacts"] = nlohmann::ordered_json::array();
        for (const auto& a : artifacts) {
            files.push_back(a.generic_string());
        }
        for (const auto& [key, value] : extra.items()) {
            j[key] = value;
        }
        return j;
    }
};

namespace detail {

inline void ensure_directory(const std::filesystem::path& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw IoError("cannot create output directory " + dir.string() + (ec ? ": " + ec.message() : ""));
    }
}

class Stopwatch
{
public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

/// Writes `text` to dir/name and records the path relative to the manifest.
inline void emit(RunManifest& m, const std::filesystem::path& dir, const std::string& name, const std::string& text)
{
    write_text_file(dir / name, text);
    m.artifacts.emplace_back(name);
}

inline void write_manifest(RunManifest& m, const std::filesystem::path& dir, double seconds)
{
    m.wall_seconds = seconds;
    write_text_file(dir / "manifest.json", m.to_json().dump(2) + "\n");
}

inline nlohmann::ordered_json axes_json(const SweepSpec& spec)
{
    auto axes = nlohmann::ordered_json::array();
    for (const auto& axis : spec.axes) {
        axes.push_back({{"parameter", axis.parameter}, {"values", axis.values}});
    }
    return axes;
}

inline nlohmann::ordered_json fit_json(const LogisticFit& fit)
{
    return {{"a", fit.a}, {"k", fit.k}, {"x0", fit.x0}, {"rmse", fit.rmse}, {"converged", fit.converged}};
}

/// Cell means along the single axis of a sweep.
inline LogisticFit fit_cell_means(const SweepResult& result)
{
    if (result.axis_names.size() != 1) {
        throw ConfigError("axis", "logistic fits need a single-axis sweep");
    }
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& cell : result.cells) {
        xs.push_back(cell.axis_values[0]);
        ys.push_back(cell.summary.mean);
    }
    return fit_logistic(xs, ys);
}

/// Time series and snapshot files for one run, named with `prefix`.
inline void emit_trajectory(RunManifest& m, const std::filesystem::path& dir, const std::string& prefix,
                            const TrajectoryRecord& rec)
{
    emit(m, dir, prefix + "timeseries.csv", timeseries_csv(rec));
    for (const auto& snap : rec.snapshots) {
        emit(m, dir, prefix + "snapshot_" + std::to_string(snap.step) + ".csv", snapshot_csv(snap, rec.n_dims));
    }
}

inline void emit_sweep(RunManifest& m, const std::filesystem::path& dir, const std::string& prefix,
                       const SweepResult& result, bool boxplot, bool fit)
{
    emit(m, dir, prefix + "sweep.csv", sweep_csv(result));
    emit(m, dir, prefix + "aggregate.csv", aggregate_csv(result));
    if (boxplot) {
        emit(m, dir, prefix + "boxplot.csv", boxplot_csv(result));
    }
    if (fit) {
        const LogisticFit f = fit_cell_means(result);
        emit(m, dir, prefix + "fit.csv", fit_csv_header() + fit_csv_row(result.axis_names[0], f));
        m.extra["fits"][prefix + "fit.csv"] = fit_json(f);
    }
}

inline std::string curve_csv(const CurveJob& job)
{
    std::string out = "distance";
    for (double k : job.steepness) {
        out += ",k=" + format_double(k);
    }
    out += '\n';
    const double max_d = std::sqrt(static_cast<double>(job.n_dims));
    for (std::size_t i = 0; i < job.samples; ++i) {
        const double d = max_d * static_cast<double>(i) / static_cast<double>(job.samples - 1);
        out += format_double(d);
        for (double k : job.steepness) {
            out += ',' + format_double(sar_repulsion_probability(d, k, job.tolerance, job.n_dims));
        }
        out += '\n';
    }
    return out;
}

}  // namespace detail

/// Single seeded run: timeseries.csv, snapshot_<step>.csv, config_echo.cfg, manifest.json.
inline RunManifest cmd_run(const SimConfig& cfg, const std::filesystem::path& out_dir)
{
    detail::Stopwatch clock;
    cfg.validate();
    detail::ensure_directory(out_dir);
    RunManifest m;
    m.command = "run";
    m.config_echo = serialize_config(cfg);

    Engine engine(cfg);
    const TrajectoryRecord rec = engine.run();
    detail::emit_trajectory(m, out_dir, "", rec);
    detail::emit(m, out_dir, "config_echo.cfg", m.config_echo);
    m.extra["final_polarization"] = rec.series.back().polarization;
    detail::write_manifest(m, out_dir, clock.seconds());
    return m;
}

struct SweepOptions
{
    std::size_t workers = 0;
    bool boxplot = false;
    bool fit = false;
};

/// Full sweep: sweep.csv, aggregate.csv, optional boxplot.csv and fit.csv.
inline RunManifest cmd_sweep(const SweepSpec& spec, const std::filesystem::path& out_dir, const SweepOptions& opts = {})
{
    detail::Stopwatch clock;
    detail::ensure_directory(out_dir);
    const SweepResult result = run_sweep(spec, opts.workers);
    RunManifest m;
    m.command = "sweep";
    m.config_echo = serialize_config(spec.base);
    m.extra["axes"] = detail::axes_json(spec);
    m.extra["iterations"] = spec.iterations;
    m.extra["master_seed"] = spec.master_seed;
    m.extra["seed_list"] = result.seed_list;
    detail::emit_sweep(m, out_dir, "", result, opts.boxplot, opts.fit);
    detail::emit(m, out_dir, "config_echo.cfg", m.config_echo);
    detail::write_manifest(m, out_dir, clock.seconds());
    return m;
}

/// Runs each preset into out_dir/<id>/ and returns one manifest per preset.
inline std::vector<RunManifest> cmd_preset(const std::vector<std::string>& ids, const std::filesystem::path& out_dir,
                                           const PresetOptions& opts = {}, std::size_t workers = 0)
{
    // Build everything first so an unknown id fails before any work starts.
    std::vector<Preset> presets;
    for (const auto& id : ids) {
        presets.push_back(make_preset(id, opts));
    }

    std::vector<RunManifest> manifests;
    for (const auto& preset : presets) {
        detail::Stopwatch clock;
        const auto dir = out_dir / preset.id;
        detail::ensure_directory(dir);
        RunManifest m;
        m.command = "preset " + preset.id;
        m.extra["description"] = preset.description;
        m.extra["master_seed"] = opts.master_seed;
        m.extra["scale"] = opts.scale;

        for (const auto& curve : preset.curves) {
            detail::emit(m, dir, curve.name + ".csv", detail::curve_csv(curve));
        }

        const auto records = parallel_map(preset.runs.size(), workers, [&](std::size_t i) {
            Engine engine(preset.runs[i].config);
            return engine.run();
        });
        for (std::size_t i = 0; i < preset.runs.size(); ++i) {
            const auto& run = preset.runs[i];
            detail::emit_trajectory(m, dir, run.name + "_", records[i]);
            detail::emit(m, dir, run.name + "_config.cfg", serialize_config(run.config));
        }

        for (const auto& sweep : preset.sweeps) {
            const SweepResult result = run_sweep(sweep.spec, workers);
            detail::emit_sweep(m, dir, sweep.name + "_", result, sweep.boxplot, sweep.fit);
            detail::emit(m, dir, sweep.name + "_config.cfg", serialize_config(sweep.spec.base));
            m.extra["sweeps"][sweep.name] = {{"axes", detail::axes_json(sweep.spec)},
                                             {"iterations", sweep.spec.iterations},
                                             {"seed_list", result.seed_list}};
        }

        if (!preset.runs.empty()) {
            m.config_echo = serialize_config(preset.runs.front().config);
        }
        else if (!preset.sweeps.empty()) {
            m.config_echo = serialize_config(preset.sweeps.front().spec.base);
        }
        detail::write_manifest(m, dir, clock.seconds());
        manifests.push_back(std::move(m));
    }
    return manifests;
}

/// Logistic fit of mean final polarization against the axis of a single-axis sweep CSV.
inline LogisticFit cmd_fit(const std::filesystem::path& sweep_csv_path)
{
    const auto rows = read_sweep_csv(sweep_csv_path);
    if (rows.empty()) {
        throw ConfigError(sweep_csv_path.string(), "sweep CSV has no rows");
    }
    std::map<double, std::pair<double, std::size_t>> sums;
    for (const auto& row : rows) {
        if (row.axis2) {
            throw ConfigError(sweep_csv_path.string(), "logistic fits need a single-axis sweep (axis2 is set)");
        }
        auto& [sum, count] = sums[row.axis1];
        sum += row.final_polarization;
        ++count;
    }
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& [x, acc] : sums) {
        xs.push_back(x);
        ys.push_back(acc.first / static_cast<double>(acc.second));
    }
    if (xs.size() < 4) {
        throw ConfigError(sweep_csv_path.string(), "need at least 4 axis values to fit");
    }
    return fit_logistic(xs, ys);
}

}  // namespace arm
