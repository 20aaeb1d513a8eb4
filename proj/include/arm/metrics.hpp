#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "arm/population.hpp"

namespace arm {

/// Population variance (divide by N) of one-dimensional positions.
inline double polarization_1d(std::span<const double> xs)
{
    if (xs.empty()) {
        throw std::invalid_argument("polarization_1d: empty population");
    }
    const auto n = static_cast<double>(xs.size());
    double sum = 0.0;
    for (double x : xs) {
        sum += x;
    }
    const double mean = sum / n;
    double sq = 0.0;
    for (double x : xs) {
        const double d = x - mean;
        sq += d * d;
    }
    return sq / n;
}

/// Population variance of coordinate `dim` over a row-major position array.
inline double coordinate_variance(std::span<const double> positions, std::size_t dims, std::size_t dim)
{
    const std::size_t n = positions.size() / dims;
    if (n == 0) {
        throw std::invalid_argument("coordinate_variance: empty population");
    }
    double sum = 0.0;
    for (std::size_t i = dim; i < positions.size(); i += dims) {
        sum += positions[i];
    }
    const double mean = sum / static_cast<double>(n);
    double sq = 0.0;
    for (std::size_t i = dim; i < positions.size(); i += dims) {
        const double d = positions[i] - mean;
        sq += d * d;
    }
    return sq / static_cast<double>(n);
}

/// Trace of the covariance matrix: sum of per-dimension population variances.
inline double polarization_trace(std::span<const double> positions, std::size_t dims)
{
    double trace = 0.0;
    for (std::size_t d = 0; d < dims; ++d) {
        trace += coordinate_variance(positions, dims, d);
    }
    return trace;
}

inline double polarization_trace(const Population& pop)
{
    if (pop.size() == 0) {
        throw std::invalid_argument("polarization_trace: empty population");
    }
    return polarization_trace(pop.positions(), pop.dims());
}

/// Linear-interpolation quantile of sorted data (the common "type 7" rule).
inline double quantile_sorted(std::span<const double> sorted, double p)
{
    if (sorted.empty()) {
        throw std::invalid_argument("quantile_sorted: empty input");
    }
    const double h = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

/// Box-plot and moment summary of one sweep cell.
struct CellSummary
{
    double mean = 0.0;
    double sd = 0.0;  // population standard deviation
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double lower_fence = 0.0;  // q1 - 1.5 IQR
    double upper_fence = 0.0;  // q3 + 1.5 IQR
    double whisker_low = 0.0;  // lowest datum >= lower_fence
    double whisker_high = 0.0; // highest datum <= upper_fence

    bool operator==(const CellSummary&) const = default;
};

inline CellSummary aggregate_sweep_cell(std::span<const double> values)
{
    if (values.empty()) {
        throw std::invalid_argument("aggregate_sweep_cell: no values");
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());

    CellSummary s;
    const auto n = static_cast<double>(sorted.size());
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    s.mean = sum / n;
    double sq = 0.0;
    for (double v : values) {
        sq += (v - s.mean) * (v - s.mean);
    }
    s.sd = std::sqrt(sq / n);
    s.q1 = quantile_sorted(sorted, 0.25);
    s.median = quantile_sorted(sorted, 0.5);
    s.q3 = quantile_sorted(sorted, 0.75);
    const double iqr = s.q3 - s.q1;
    s.lower_fence = s.q1 - 1.5 * iqr;
    s.upper_fence = s.q3 + 1.5 * iqr;
    s.whisker_low = *std::lower_bound(sorted.begin(), sorted.end(), s.lower_fence);
    s.whisker_high = *(std::upper_bound(sorted.begin(), sorted.end(), s.upper_fence) - 1);
    return s;
}

}  // namespace arm
