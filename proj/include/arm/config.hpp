#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "arm/errors.hpp"

namespace arm {

/// Piecewise-constant density on [0, 1] given by explicit bin edges.
struct HistogramSpec
{
    std::vector<double> bin_edges;
    std::vector<double> weights;

    bool operator==(const HistogramSpec&) const = default;

    /// Checks shape only; an all-zero weight vector is reported by the sampler.
    void validate() const
    {
        if (bin_edges.size() < 2) {
            throw ConfigError("bin_edges", "need at least two edges");
        }
        if (weights.size() + 1 != bin_edges.size()) {
            throw ConfigError("weights", "expected " + std::to_string(bin_edges.size() - 1) +
                                             " weights, got " + std::to_string(weights.size()));
        }
        if (bin_edges.front() != 0.0 || bin_edges.back() != 1.0) {
            throw ConfigError("bin_edges", "edges must span [0, 1]");
        }
        for (std::size_t i = 1; i < bin_edges.size(); ++i) {
            if (!(bin_edges[i] > bin_edges[i - 1])) {
                throw ConfigError("bin_edges", "edges must be strictly increasing");
            }
        }
        for (double w : weights) {
            if (!(w >= 0.0) || !std::isfinite(w)) {
                throw ConfigError("weights", "weights must be finite and nonnegative");
            }
        }
    }
};

/// Deterministic attraction within tolerance, repulsion beyond it.
struct ArRule
{
    bool operator==(const ArRule&) const = default;
};

/// Stochastic attraction-repulsion; steepness may be +infinity.
struct SarRule
{
    double steepness = 4.0;
    bool operator==(const SarRule&) const = default;
};

using Rule = std::variant<ArRule, SarRule>;

/// Truncated normal per dimension. For n_dims > 1 this is the diagonal
/// multivariate normal with every mean equal to `mean`.
struct NormalInit
{
    double mean = 0.5;
    double sigma = 0.2;
    bool operator==(const NormalInit&) const = default;
};

struct MultivariateInit
{
    std::vector<double> means;
    double variance = 0.04;
    bool operator==(const MultivariateInit&) const = default;
};

struct EmpiricalInit
{
    HistogramSpec histogram;
    bool operator==(const EmpiricalInit&) const = default;
};

/// Row-major positions, n_actors * n_dims values.
struct ExplicitInit
{
    std::vector<double> positions;
    bool operator==(const ExplicitInit&) const = default;
};

using Initializer = std::variant<NormalInit, MultivariateInit, EmpiricalInit, ExplicitInit>;

struct Shock
{
    std::vector<double> strength;  // one entry per dimension
    std::uint64_t at_step = 0;
    bool operator==(const Shock&) const = default;
};

/// Full parameterization of one run. Defaults are the reference model
/// parameters (N=100, D=1, Normal(0.5, 0.2), E=0.1, T=0.25, R=0.25).
struct SimConfig
{
    std::size_t n_actors = 100;
    std::size_t n_dims = 1;
    double tolerance = 0.25;
    double responsiveness = 0.25;
    std::vector<double> exposure{0.1};
    Rule rule = ArRule{};
    Initializer initializer = NormalInit{};
    double self_interest_prob = 0.0;
    std::optional<Shock> shock;
    std::uint64_t max_steps = 1'000'000;
    std::uint64_t record_every = 1000;
    std::vector<std::uint64_t> snapshot_steps;
    std::uint64_t seed = 0;

    bool operator==(const SimConfig&) const = default;

    bool stochastic_rule() const noexcept { return std::holds_alternative<SarRule>(rule); }

    double steepness() const noexcept
    {
        if (const auto* sar = std::get_if<SarRule>(&rule)) {
            return sar->steepness;
        }
        return std::numeric_limits<double>::infinity();
    }

    /// Throws ConfigError naming the first offending field.
    void validate() const
    {
        if (n_actors < 1) {
            throw ConfigError("n_actors", "must be positive");
        }
        if (n_dims < 1) {
            throw ConfigError("n_dims", "must be positive");
        }
        const double diameter = std::sqrt(static_cast<double>(n_dims));
        if (!(tolerance >= 0.0 && tolerance <= diameter)) {
            throw ConfigError("tolerance", "must lie in [0, sqrt(n_dims)]");
        }
        if (!(responsiveness > 0.0 && responsiveness <= 1.0)) {
            throw ConfigError("responsiveness", "must lie in (0, 1]");
        }
        if (exposure.size() != n_dims) {
            throw ConfigError("exposure", "expected " + std::to_string(n_dims) + " values, got " +
                                              std::to_string(exposure.size()));
        }
        for (double e : exposure) {
            if (!(e > 0.0) || !std::isfinite(e)) {
                throw ConfigError("exposure", "must be positive and finite");
            }
        }
        if (const auto* sar = std::get_if<SarRule>(&rule)) {
            if (!(sar->steepness > 1.0)) {
                throw ConfigError("steepness", "must be greater than 1");
            }
            if (!(tolerance > 0.0 && tolerance < diameter)) {
                throw ConfigError("tolerance", "stochastic rule needs tolerance in (0, sqrt(n_dims))");
            }
        }
        if (!(self_interest_prob >= 0.0 && self_interest_prob <= 1.0)) {
            throw ConfigError("self_interest_prob", "must lie in [0, 1]");
        }
        if (shock) {
            if (shock->strength.size() != n_dims) {
                throw ConfigError("shock_strength", "expected " + std::to_string(n_dims) + " values");
            }
            for (double d : shock->strength) {
                if (!(d >= 0.0 && d <= 1.0)) {
                    throw ConfigError("shock_strength", "must lie in [0, 1]");
                }
            }
            if (shock->at_step < 1) {
                throw ConfigError("shock_step", "must be positive");
            }
            if (shock->at_step > max_steps || max_steps - shock->at_step < n_actors) {
                throw ConfigError("shock_step", "shock window of n_actors steps would be truncated by max_steps");
            }
        }
        if (record_every < 1) {
            throw ConfigError("record_every", "must be positive");
        }
        for (auto s : snapshot_steps) {
            if (s > max_steps) {
                throw ConfigError("snapshot_steps", "step " + std::to_string(s) + " exceeds max_steps");
            }
        }
        validate_initializer();
    }

private:
    void validate_initializer() const
    {
        auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
        if (const auto* normal = std::get_if<NormalInit>(&initializer)) {
            if (!in_unit(normal->mean)) {
                throw ConfigError("init_mean", "must lie in [0, 1]");
            }
            if (!(normal->sigma > 0.0) || !std::isfinite(normal->sigma)) {
                throw ConfigError("init_sigma", "must be positive");
            }
        }
        else if (const auto* mvn = std::get_if<MultivariateInit>(&initializer)) {
            if (mvn->means.size() != n_dims) {
                throw ConfigError("init_means", "expected " + std::to_string(n_dims) + " values");
            }
            for (double m : mvn->means) {
                if (!in_unit(m)) {
                    throw ConfigError("init_means", "must lie in [0, 1]");
                }
            }
            if (!(mvn->variance > 0.0) || !std::isfinite(mvn->variance)) {
                throw ConfigError("init_variance", "must be positive");
            }
        }
        else if (const auto* emp = std::get_if<EmpiricalInit>(&initializer)) {
            if (n_dims != 1) {
                throw ConfigError("initializer", "empirical initialization is one-dimensional");
            }
            emp->histogram.validate();
        }
        else if (const auto* ex = std::get_if<ExplicitInit>(&initializer)) {
            if (ex->positions.size() != n_actors * n_dims) {
                throw ConfigError("positions", "expected " + std::to_string(n_actors * n_dims) + " values, got " +
                                                   std::to_string(ex->positions.size()));
            }
            for (double v : ex->positions) {
                if (!in_unit(v)) {
                    throw ConfigError("positions", "must lie in [0, 1]");
                }
            }
        }
    }
};

}  // namespace arm
