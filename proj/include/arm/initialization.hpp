#pragma once

// Initial populations: truncated normal (rejection sampled), diagonal
// multivariate normal, empirical histogram and explicit positions.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "arm/config.hpp"
#include "arm/errors.hpp"
#include "arm/population.hpp"
#include "arm/rng.hpp"

namespace arm {

/// Maximum rejection-sampling attempts per actor before giving up.
inline constexpr int kRejectionCap = 1000;

namespace detail {

inline bool in_unit_box(std::span<const double> x) noexcept
{
    return std::all_of(x.begin(), x.end(), [](double v) { return v >= 0.0 && v <= 1.0; });
}

}  // namespace detail

/// Independent Normal(means[d], sqrt(variance)) coordinates, whole vector
/// resampled until it lies in [0,1]^D.
inline Population init_multivariate(std::size_t n, std::span<const double> means, double variance, Rng& rng)
{
    const std::size_t dims = means.size();
    const double sigma = std::sqrt(variance);
    std::vector<double> positions(n * dims);
    for (std::size_t i = 0; i < n; ++i) {
        std::span<double> x(positions.data() + i * dims, dims);
        int attempts = 0;
        do {
            if (++attempts > kRejectionCap) {
                throw InitError("rejection sampling exceeded " + std::to_string(kRejectionCap) +
                                " attempts for actor " + std::to_string(i));
            }
            for (std::size_t d = 0; d < dims; ++d) {
                x[d] = rng.normal(means[d], sigma);
            }
        } while (!detail::in_unit_box(x));
    }
    return Population(dims, std::move(positions));
}

inline Population init_normal(std::size_t n, double mean, double sigma, Rng& rng)
{
    return init_multivariate(n, std::span<const double>(&mean, 1), sigma * sigma, rng);
}

/// Bin chosen with probability proportional to its weight, then a uniform
/// draw across that bin's width.
inline Population init_empirical(std::size_t n, const HistogramSpec& hist, Rng& rng)
{
    hist.validate();
    std::vector<double> cumulative(hist.weights.size());
    std::partial_sum(hist.weights.begin(), hist.weights.end(), cumulative.begin());
    const double total = cumulative.back();
    if (!(total > 0.0)) {
        throw InitError("histogram weights are all zero");
    }
    std::vector<double> positions(n);
    for (auto& x : positions) {
        const double u = rng.uniform() * total;
        auto bin = static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u) -
                                            cumulative.begin());
        // u * total may round up to total itself
        bin = std::min(bin, cumulative.size() - 1);
        while (hist.weights[bin] == 0.0) {
            --bin;
        }
        const double lo = hist.bin_edges[bin];
        const double hi = hist.bin_edges[bin + 1];
        x = lo + rng.uniform() * (hi - lo);
    }
    return Population(1, std::move(positions));
}

inline Population init_explicit(std::size_t n_dims, std::vector<double> positions)
{
    if (!detail::in_unit_box(positions)) {
        throw InitError("explicit positions must lie in [0, 1]");
    }
    return Population(n_dims, std::move(positions));
}

/// Builds the initial population described by `cfg.initializer`.
inline Population initialize(const SimConfig& cfg, Rng& rng)
{
    return std::visit(
        [&](const auto& init) -> Population {
            using T = std::decay_t<decltype(init)>;
            if constexpr (std::is_same_v<T, NormalInit>) {
                const std::vector<double> means(cfg.n_dims, init.mean);
                return init_multivariate(cfg.n_actors, means, init.sigma * init.sigma, rng);
            }
            else if constexpr (std::is_same_v<T, MultivariateInit>) {
                return init_multivariate(cfg.n_actors, init.means, init.variance, rng);
            }
            else if constexpr (std::is_same_v<T, EmpiricalInit>) {
                return init_empirical(cfg.n_actors, init.histogram, rng);
            }
            else {
                return init_explicit(cfg.n_dims, init.positions);
            }
        },
        cfg.initializer);
}

}  // namespace arm
