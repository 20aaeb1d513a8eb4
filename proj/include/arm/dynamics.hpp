#pragma once

// Pairwise interaction kernels: interaction probability, the deterministic
// attraction-repulsion update and the stochastic repulsion probability.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "arm/errors.hpp"

namespace arm {

/// Probability that two actors a distance `distance` apart interact when
/// the exposure (halving distance) is `exposure`: (1/2)^(distance/exposure).
inline double interaction_probability(double distance, double exposure)
{
    if (!(exposure > 0.0)) {
        throw ConfigError("exposure", "must be positive");
    }
    return std::exp2(-distance / exposure);
}

/// Exposure-weighted distance sqrt(sum_i ((a_i - b_i) / E_i)^2).
inline double scaled_distance(std::span<const double> a, std::span<const double> b,
                              std::span<const double> exposures) noexcept
{
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double z = (a[i] - b[i]) / exposures[i];
        sum += z * z;
    }
    return std::sqrt(sum);
}

inline double interaction_probability(std::span<const double> a, std::span<const double> b,
                                      std::span<const double> exposures)
{
    if (a.size() != b.size() || a.size() != exposures.size()) {
        throw ConfigError("exposure", "dimension mismatch between positions and exposures");
    }
    for (double e : exposures) {
        if (!(e > 0.0)) {
            throw ConfigError("exposure", "must be positive");
        }
    }
    return std::exp2(-scaled_distance(a, b, exposures));
}

inline double euclidean_distance(std::span<const double> a, std::span<const double> b) noexcept
{
    if (a.size() == 1) {
        return std::fabs(a[0] - b[0]);
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

inline double clamp_unit(double x) noexcept { return std::max(0.0, std::min(1.0, x)); }

/// active <- clamp(active + R (target - active))
inline void attract(std::span<double> active, std::span<const double> target, double responsiveness) noexcept
{
    for (std::size_t i = 0; i < active.size(); ++i) {
        active[i] = clamp_unit(active[i] + responsiveness * (target[i] - active[i]));
    }
}

/// active <- clamp(active - R (other - active))
inline void repulse(std::span<double> active, std::span<const double> other, double responsiveness) noexcept
{
    for (std::size_t i = 0; i < active.size(); ++i) {
        active[i] = clamp_unit(active[i] - responsiveness * (other[i] - active[i]));
    }
}

/// Distances at exactly the tolerance attract.
inline bool attracts(double distance, double tolerance) noexcept { return distance <= tolerance; }

/// Deterministic AR update of the active actor; the passive actor is untouched.
inline std::vector<double> apply_ar(std::span<const double> active, std::span<const double> passive,
                                    double tolerance, double responsiveness)
{
    std::vector<double> out(active.begin(), active.end());
    if (attracts(euclidean_distance(active, passive), tolerance)) {
        attract(out, passive, responsiveness);
    }
    else {
        repulse(out, passive, responsiveness);
    }
    return out;
}

inline double apply_ar(double active, double passive, double tolerance, double responsiveness)
{
    return apply_ar(std::span<const double>(&active, 1), std::span<const double>(&passive, 1), tolerance,
                    responsiveness)[0];
}

/// Repulsion probability of the stochastic rule,
/// f(d) = 1 / (1 + ((sqrt(D)/d - 1) / (sqrt(D)/T - 1))^k).
///
/// f(T) = 1/2, f(sqrt(D)) = 1, and f(0) is taken as its limit 0. An infinite
/// steepness gives the step function of the deterministic rule.
inline double sar_repulsion_probability(double distance, double steepness, double tolerance,
                                        std::size_t n_dims) noexcept
{
    if (!(distance > 0.0)) {
        return 0.0;
    }
    if (std::isinf(steepness)) {
        return attracts(distance, tolerance) ? 0.0 : 1.0;
    }
    const double diameter = std::sqrt(static_cast<double>(n_dims));
    if (distance >= diameter) {
        return 1.0;
    }
    const double ratio = (diameter / distance - 1.0) / (diameter / tolerance - 1.0);
    return 1.0 / (1.0 + std::pow(ratio, steepness));
}

}  // namespace arm
