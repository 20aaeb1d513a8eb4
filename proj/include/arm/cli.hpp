#pragma once

// armsim command line. run_cli is the whole tool; main() only forwards to it.
//
// Exit codes: 0 success, 1 runtime failure, 2 config or usage error, 3 I/O error.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "arm/commands.hpp"
#include "arm/config_io.hpp"
#include "arm/errors.hpp"
#include "arm/presets.hpp"
#include "arm/sweep.hpp"
#include "arm/text_format.hpp"

namespace arm {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitIo = 3;

namespace detail {

/// Keys tied to one initializer; dropped from the file layer when a flag picks a new initializer.
inline bool initializer_key(const std::string& key)
{
    return key.rfind("init_", 0) == 0 || key.rfind("histogram", 0) == 0 || key == "positions";
}

/// Defaults < config file < flags.
inline SimConfig resolve_config(const std::string& config_path, const ConfigEntries& flag_entries)
{
    ConfigEntries entries;
    std::filesystem::path base_dir;
    if (!config_path.empty()) {
        entries = parse_entries(read_text_file(config_path));
        base_dir = std::filesystem::path(config_path).parent_path();
    }
    if (flag_entries.count("initializer")) {
        std::erase_if(entries, [](const auto& kv) { return initializer_key(kv.first); });
    }
    if (flag_entries.count("steepness") && !flag_entries.count("rule")) {
        entries.erase("rule");
    }
    if (flag_entries.count("rule") && !flag_entries.count("steepness")) {
        entries.erase("steepness");
    }
    for (const auto& [key, value] : flag_entries) {
        entries[key] = value;
    }
    SimConfig cfg = apply_entries(SimConfig{}, entries, base_dir);
    cfg.validate();
    return cfg;
}

/// `name=v1,v2,...` or `name=start:stop:step`.
inline SweepAxis parse_axis(const std::string& text)
{
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
        throw ConfigError("axis", "expected name=values, got '" + text + "'");
    }
    SweepAxis axis;
    axis.parameter = std::string(trim(std::string_view(text).substr(0, eq)));
    const std::string values(trim(std::string_view(text).substr(eq + 1)));
    if (values.find(':') != std::string::npos) {
        std::string rest = values;
        std::replace(rest.begin(), rest.end(), ':', ',');
        const auto range = parse_doubles(rest, "axis " + axis.parameter);
        if (range.size() != 3 || !(range[2] > 0.0) || range[1] < range[0]) {
            throw ConfigError("axis " + axis.parameter, "expected start:stop:step with step > 0 and stop >= start");
        }
        axis.values = grid(range[0], range[1], range[2]);
    }
    else {
        axis.values = parse_doubles(values, "axis " + axis.parameter);
    }
    if (std::find(sweep_parameters().begin(), sweep_parameters().end(), axis.parameter) == sweep_parameters().end()) {
        throw ConfigError("axis", "'" + axis.parameter + "' is not sweepable");
    }
    return axis;
}

inline std::string join_ids()
{
    std::string out;
    for (const auto& id : preset_ids()) {
        out += (out.empty() ? "" : ", ") + id;
    }
    return out;
}

struct ConfigFlags
{
    std::string config_path;
    std::map<std::string, std::string> values;

    void attach(CLI::App& app)
    {
        app.add_option("-c,--config", config_path, "config file (key = value)");
        for (const auto& key : config_keys()) {
            app.add_option("--" + key, values[key], "override config key '" + key + "'");
        }
    }

    ConfigEntries entries(const CLI::App& app) const
    {
        ConfigEntries out;
        for (const auto& [key, value] : values) {
            if (app.count("--" + key) > 0) {
                out[key] = value;
            }
        }
        return out;
    }
};

}  // namespace detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    CLI::App app{"Attraction-repulsion opinion dynamics simulator"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);
    std::size_t threads = 0;
    app.add_option("--threads", threads, "worker threads (default: ARM_THREADS or all cores)");

    auto* run = app.add_subcommand("run", "single seeded run: time series and snapshots");
    detail::ConfigFlags run_flags;
    std::string run_out = "out";
    run_flags.attach(*run);
    run->add_option("-o,--out", run_out, "output directory");

    auto* sweep = app.add_subcommand("sweep", "parameter sweep with the seed-list protocol");
    detail::ConfigFlags sweep_flags;
    std::string sweep_out = "out";
    std::vector<std::string> axis_texts;
    std::size_t iterations = 20;
    std::uint64_t sweep_seed = 0;
    bool boxplot = false;
    bool sweep_fit = false;
    sweep_flags.attach(*sweep);
    sweep->add_option("-o,--out", sweep_out, "output directory");
    sweep->add_option("-a,--axis", axis_texts, "axis as name=v1,v2,... or name=start:stop:step (one or two)")
        ->required();
    sweep->add_option("-n,--iterations", iterations, "iterations per cell");
    sweep->add_option("--master-seed", sweep_seed, "master seed for the iteration seed list");
    sweep->add_flag("--boxplot", boxplot, "also write boxplot.csv");
    sweep->add_flag("--fit", sweep_fit, "also fit a logistic curve (single axis)");

    auto* preset = app.add_subcommand("preset", "regenerate the data behind a figure");
    std::vector<std::string> preset_names;
    std::string preset_out = "out";
    PresetOptions preset_opts;
    std::size_t preset_iterations = 0;
    preset->add_option("ids", preset_names, "figure ids (" + detail::join_ids() + ")")->required();
    preset->add_option("-o,--out", preset_out, "output directory");
    preset->add_option("--master-seed", preset_opts.master_seed, "master seed");
    preset->add_option("-n,--iterations", preset_iterations, "override iterations per cell");
    preset->add_option("--scale", preset_opts.scale, "multiply every step count by this factor");

    auto* fit = app.add_subcommand("fit", "logistic fit of cell means from a single-axis sweep CSV");
    std::string fit_csv_path;
    std::string fit_axis;
    std::string fit_out;
    fit->add_option("sweep_csv", fit_csv_path, "sweep CSV")->required();
    fit->add_option("--axis", fit_axis, "axis label for the output row")->required();
    fit->add_option("-o,--out", fit_out, "write the fit row to this CSV file");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    }
    catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitConfig;
    }

    try {
        const std::size_t workers = app.count("--threads") > 0 ? threads : default_workers();
        if (*run) {
            const SimConfig cfg = detail::resolve_config(run_flags.config_path, run_flags.entries(*run));
            const auto m = cmd_run(cfg, run_out);
            out << "final_polarization=" << format_double(m.extra["final_polarization"].get<double>()) << "\n";
            out << "wrote " << m.artifacts.size() << " files to " << run_out << "\n";
        }
        else if (*sweep) {
            SweepSpec spec;
            spec.base = detail::resolve_config(sweep_flags.config_path, sweep_flags.entries(*sweep));
            for (const auto& t : axis_texts) {
                spec.axes.push_back(detail::parse_axis(t));
            }
            spec.iterations = iterations;
            spec.master_seed = sweep_seed;
            const auto m = cmd_sweep(spec, sweep_out, {workers, boxplot, sweep_fit});
            out << "wrote " << m.artifacts.size() << " files to " << sweep_out << "\n";
        }
        else if (*preset) {
            if (preset->count("--iterations") > 0) {
                preset_opts.iterations = preset_iterations;
            }
            const auto ms = cmd_preset(preset_names, preset_out, preset_opts, workers);
            for (const auto& m : ms) {
                out << m.command << ": " << m.artifacts.size() << " files, " << m.wall_seconds << " s\n";
            }
        }
        else if (*fit) {
            const LogisticFit f = cmd_fit(fit_csv_path);
            const std::string row = fit_csv_row(fit_axis, f);
            out << fit_csv_header() << row;
            if (!fit_out.empty()) {
                write_text_file(fit_out, fit_csv_header() + row);
            }
        }
        return kExitOk;
    }
    catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    catch (const IoError& e) {
        err << "i/o error: " << e.what() << "\n";
        return kExitIo;
    }
    catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}

}  // namespace arm
