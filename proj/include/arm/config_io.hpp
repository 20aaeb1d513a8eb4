#pragma once

// Flat `key = value` text format for run configs and histogram files.
//
//   # comments start with '#'
//   n_actors = 100
//   exposure = 0.1, 0.4        # one value per dimension, or one to broadcast
//   rule = sar
//   steepness = inf
//
// Keys are listed in config_keys(). Later duplicates override earlier ones.

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>

#include "arm/config.hpp"
#include "arm/errors.hpp"
#include "arm/text_format.hpp"

namespace arm {

using ConfigEntries = std::map<std::string, std::string, std::less<>>;

inline const std::vector<std::string>& config_keys()
{
    static const std::vector<std::string> keys{
        "n_actors",         "n_dims",        "tolerance",     "responsiveness",  "exposure",
        "rule",             "steepness",     "initializer",   "init_mean",       "init_sigma",
        "init_means",       "init_variance", "histogram",     "histogram_bin_edges", "histogram_weights",
        "positions",        "self_interest_prob", "shock_strength", "shock_step", "max_steps",
        "record_every",     "snapshot_steps", "seed",
    };
    return keys;
}

inline std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Splits `key = value` lines; blank lines and '#' comments are skipped.
inline ConfigEntries parse_entries(std::string_view text)
{
    ConfigEntries entries;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no), "expected 'key = value'");
        }
        const auto key = trim(line.substr(0, eq));
        if (key.empty()) {
            throw ConfigError("line " + std::to_string(line_no), "missing key");
        }
        entries[std::string(key)] = std::string(trim(line.substr(eq + 1)));
    }
    return entries;
}

inline HistogramSpec parse_histogram(std::string_view text)
{
    const auto entries = parse_entries(text);
    HistogramSpec h;
    for (const auto& [key, value] : entries) {
        if (key == "bin_edges") {
            h.bin_edges = parse_doubles(value, key);
        }
        else if (key == "weights") {
            h.weights = parse_doubles(value, key);
        }
        else {
            throw ConfigError(key, "unknown histogram key");
        }
    }
    h.validate();
    return h;
}

inline HistogramSpec read_histogram_file(const std::filesystem::path& path)
{
    return parse_histogram(read_text_file(path));
}

namespace detail {

inline std::vector<double> broadcast(std::vector<double> values, std::size_t dims)
{
    if (values.size() == 1 && dims > 1) {
        values.assign(dims, values.front());
    }
    return values;
}

}  // namespace detail

/// Overlays `entries` on `cfg`. Relative histogram paths resolve against `base_dir`.
inline SimConfig apply_entries(SimConfig cfg, const ConfigEntries& entries,
                               const std::filesystem::path& base_dir = {})
{
    for (const auto& [key, value] : entries) {
        if (std::find(config_keys().begin(), config_keys().end(), key) == config_keys().end()) {
            throw ConfigError(key, "unknown key");
        }
    }
    auto get = [&](std::string_view key) -> const std::string* {
        const auto it = entries.find(key);
        return it == entries.end() ? nullptr : &it->second;
    };

    if (auto v = get("n_actors")) {
        cfg.n_actors = parse_uint(*v, "n_actors");
    }
    if (auto v = get("n_dims")) {
        cfg.n_dims = parse_uint(*v, "n_dims");
    }
    if (auto v = get("tolerance")) {
        cfg.tolerance = parse_double(*v, "tolerance");
    }
    if (auto v = get("responsiveness")) {
        cfg.responsiveness = parse_double(*v, "responsiveness");
    }
    if (auto v = get("exposure")) {
        cfg.exposure = detail::broadcast(parse_doubles(*v, "exposure"), cfg.n_dims);
    }
    else if (cfg.exposure.size() == 1) {
        cfg.exposure = detail::broadcast(cfg.exposure, cfg.n_dims);
    }

    if (auto v = get("rule")) {
        if (*v == "ar") {
            cfg.rule = ArRule{};
        }
        else if (*v == "sar") {
            cfg.rule = SarRule{cfg.steepness()};
        }
        else {
            throw ConfigError("rule", "expected 'ar' or 'sar', got '" + *v + "'");
        }
    }
    if (auto v = get("steepness")) {
        if (get("rule") && std::holds_alternative<ArRule>(cfg.rule)) {
            throw ConfigError("steepness", "only applies to rule = sar");
        }
        cfg.rule = SarRule{parse_double(*v, "steepness")};
    }

    if (auto v = get("initializer")) {
        if (*v == "normal") {
            cfg.initializer = NormalInit{};
        }
        else if (*v == "multivariate") {
            cfg.initializer = MultivariateInit{std::vector<double>(cfg.n_dims, 0.5), 0.04};
        }
        else if (*v == "empirical") {
            cfg.initializer = EmpiricalInit{};
        }
        else if (*v == "explicit") {
            cfg.initializer = ExplicitInit{};
        }
        else {
            throw ConfigError("initializer", "expected normal, multivariate, empirical or explicit; got '" + *v + "'");
        }
    }
    auto require = [&]<class T>(const char* key) -> T& {
        auto* init = std::get_if<T>(&cfg.initializer);
        if (!init) {
            throw ConfigError(key, "does not apply to the selected initializer");
        }
        return *init;
    };
    if (auto v = get("init_mean")) {
        require.operator()<NormalInit>("init_mean").mean = parse_double(*v, "init_mean");
    }
    if (auto v = get("init_sigma")) {
        require.operator()<NormalInit>("init_sigma").sigma = parse_double(*v, "init_sigma");
    }
    if (auto v = get("init_means")) {
        require.operator()<MultivariateInit>("init_means").means =
            detail::broadcast(parse_doubles(*v, "init_means"), cfg.n_dims);
    }
    if (auto v = get("init_variance")) {
        require.operator()<MultivariateInit>("init_variance").variance = parse_double(*v, "init_variance");
    }
    if (auto v = get("histogram")) {
        std::filesystem::path path(*v);
        if (path.is_relative() && !base_dir.empty()) {
            path = base_dir / path;
        }
        require.operator()<EmpiricalInit>("histogram").histogram = read_histogram_file(path);
    }
    if (auto v = get("histogram_bin_edges")) {
        require.operator()<EmpiricalInit>("histogram_bin_edges").histogram.bin_edges =
            parse_doubles(*v, "histogram_bin_edges");
    }
    if (auto v = get("histogram_weights")) {
        require.operator()<EmpiricalInit>("histogram_weights").histogram.weights =
            parse_doubles(*v, "histogram_weights");
    }
    if (auto v = get("positions")) {
        require.operator()<ExplicitInit>("positions").positions = parse_doubles(*v, "positions");
    }

    if (auto v = get("self_interest_prob")) {
        cfg.self_interest_prob = parse_double(*v, "self_interest_prob");
    }
    if (get("shock_strength") || get("shock_step")) {
        if (!cfg.shock) {
            cfg.shock = Shock{};
        }
        if (auto v = get("shock_strength")) {
            cfg.shock->strength = detail::broadcast(parse_doubles(*v, "shock_strength"), cfg.n_dims);
        }
        if (auto v = get("shock_step")) {
            cfg.shock->at_step = parse_uint(*v, "shock_step");
        }
    }

    if (auto v = get("max_steps")) {
        cfg.max_steps = parse_uint(*v, "max_steps");
    }
    if (auto v = get("record_every")) {
        cfg.record_every = parse_uint(*v, "record_every");
    }
    if (auto v = get("snapshot_steps")) {
        cfg.snapshot_steps = parse_uints(*v, "snapshot_steps");
    }
    if (auto v = get("seed")) {
        cfg.seed = parse_uint(*v, "seed");
    }
    return cfg;
}

inline SimConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {})
{
    SimConfig cfg = apply_entries(SimConfig{}, parse_entries(text), base_dir);
    cfg.validate();
    return cfg;
}

inline SimConfig read_config_file(const std::filesystem::path& path)
{
    return parse_config(read_text_file(path), path.parent_path());
}

/// Complete, self-contained text form; parse_config(serialize_config(c)) == c.
inline std::string serialize_config(const SimConfig& cfg)
{
    std::ostringstream out;
    out << "n_actors = " << cfg.n_actors << '\n';
    out << "n_dims = " << cfg.n_dims << '\n';
    out << "tolerance = " << format_double(cfg.tolerance) << '\n';
    out << "responsiveness = " << format_double(cfg.responsiveness) << '\n';
    out << "exposure = " << join(cfg.exposure) << '\n';
    if (const auto* sar = std::get_if<SarRule>(&cfg.rule)) {
        out << "rule = sar\n";
        out << "steepness = " << format_double(sar->steepness) << '\n';
    }
    else {
        out << "rule = ar\n";
    }
    std::visit(
        [&](const auto& init) {
            using T = std::decay_t<decltype(init)>;
            if constexpr (std::is_same_v<T, NormalInit>) {
                out << "initializer = normal\n";
                out << "init_mean = " << format_double(init.mean) << '\n';
                out << "init_sigma = " << format_double(init.sigma) << '\n';
            }
            else if constexpr (std::is_same_v<T, MultivariateInit>) {
                out << "initializer = multivariate\n";
                out << "init_means = " << join(init.means) << '\n';
                out << "init_variance = " << format_double(init.variance) << '\n';
            }
            else if constexpr (std::is_same_v<T, EmpiricalInit>) {
                out << "initializer = empirical\n";
                out << "histogram_bin_edges = " << join(init.histogram.bin_edges) << '\n';
                out << "histogram_weights = " << join(init.histogram.weights) << '\n';
            }
            else {
                out << "initializer = explicit\n";
                out << "positions = " << join(init.positions) << '\n';
            }
        },
        cfg.initializer);
    out << "self_interest_prob = " << format_double(cfg.self_interest_prob) << '\n';
    if (cfg.shock) {
        out << "shock_strength = " << join(cfg.shock->strength) << '\n';
        out << "shock_step = " << cfg.shock->at_step << '\n';
    }
    out << "max_steps = " << cfg.max_steps << '\n';
    out << "record_every = " << cfg.record_every << '\n';
    out << "snapshot_steps = " << join(cfg.snapshot_steps) << '\n';
    out << "seed = " << cfg.seed << '\n';
    return out.str();
}

}  // namespace arm
