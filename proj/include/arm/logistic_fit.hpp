#pragma once

// Least-squares fit of a/(1 + exp(-k (x - x0))) to transition data, used to
// locate the polarized/non-polarized boundary along a swept parameter.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "arm/metrics.hpp"

namespace arm {

struct LogisticFit
{
    double a = 0.0;   // upper asymptote
    double k = 0.0;   // growth rate; negative means a decreasing transition
    double x0 = 0.0;  // midpoint
    double rmse = 0.0;
    bool converged = false;
    int iterations = 0;

    double operator()(double x) const noexcept;
};

namespace detail {

/// 1 / (1 + exp(-z)) without overflow for large |z|.
inline double sigmoid(double z) noexcept
{
    if (z >= 0.0) {
        return 1.0 / (1.0 + std::exp(-z));
    }
    const double e = std::exp(z);
    return e / (1.0 + e);
}

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

/// Solves a symmetric positive definite 3x3 system by Cholesky; false if not SPD.
inline bool solve_spd3(const Mat3& m, const Vec3& b, Vec3& x) noexcept
{
    Mat3 l{};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = m[i][j];
            for (int p = 0; p < j; ++p) {
                s -= l[i][p] * l[j][p];
            }
            if (i == j) {
                if (!(s > 0.0)) {
                    return false;
                }
                l[i][i] = std::sqrt(s);
            }
            else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    Vec3 y{};
    for (int i = 0; i < 3; ++i) {
        double s = b[i];
        for (int p = 0; p < i; ++p) {
            s -= l[i][p] * y[p];
        }
        y[i] = s / l[i][i];
    }
    for (int i = 2; i >= 0; --i) {
        double s = y[i];
        for (int p = i + 1; p < 3; ++p) {
            s -= l[p][i] * x[p];
        }
        x[i] = s / l[i][i];
    }
    return true;
}

inline double sum_squared_error(std::span<const double> xs, std::span<const double> ys, const Vec3& p) noexcept
{
    double sse = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = p[0] * sigmoid(p[1] * (xs[i] - p[2])) - ys[i];
        sse += r * r;
    }
    return sse;
}

inline constexpr double kRelTol = 1e-9;
inline constexpr int kMaxIterations = 2000;

/// Levenberg-Marquardt from one starting point.
inline LogisticFit levenberg_marquardt(std::span<const double> xs, std::span<const double> ys, Vec3 p)
{
    const std::size_t n = xs.size();
    double y_norm2 = 0.0;
    for (double y : ys) {
        y_norm2 += y * y;
    }
    double sse = sum_squared_error(xs, ys, p);
    double lambda = -1.0;
    LogisticFit fit;

    for (int iter = 0; iter < kMaxIterations; ++iter) {
        fit.iterations = iter + 1;
        Mat3 jtj{};
        Vec3 jtr{};
        Vec3 col_norm2{};
        for (std::size_t i = 0; i < n; ++i) {
            const double z = p[1] * (xs[i] - p[2]);
            const double s = sigmoid(z);
            const double s1 = sigmoid(-z);  // 1 - s
            const double r = p[0] * s - ys[i];
            const Vec3 j{s, p[0] * s * s1 * (xs[i] - p[2]), -p[0] * s * s1 * p[1]};
            for (int a = 0; a < 3; ++a) {
                jtr[a] += j[a] * r;
                col_norm2[a] += j[a] * j[a];
                for (int b = 0; b < 3; ++b) {
                    jtj[a][b] += j[a] * j[b];
                }
            }
        }

        // Gradient per Marquardt-scaled parameter, relative to |J_j| |y|.
        double gradient_measure = 0.0;
        for (int a = 0; a < 3; ++a) {
            if (col_norm2[a] > 0.0) {
                gradient_measure = std::max(gradient_measure, std::fabs(jtr[a]) / std::sqrt(col_norm2[a] * y_norm2));
            }
        }
        const bool flat_gradient = gradient_measure <= kRelTol;

        if (lambda < 0.0) {
            lambda = 1e-3 * std::max({jtj[0][0], jtj[1][1], jtj[2][2], 1e-300});
        }

        bool accepted = false;
        Vec3 step{};
        while (lambda < 1e300) {
            Mat3 damped = jtj;
            for (int a = 0; a < 3; ++a) {
                damped[a][a] += lambda * std::max(jtj[a][a], 1e-300);
            }
            const Vec3 rhs{-jtr[0], -jtr[1], -jtr[2]};
            if (solve_spd3(damped, rhs, step)) {
                const Vec3 trial{p[0] + step[0], p[1] + step[1], p[2] + step[2]};
                const double trial_sse = sum_squared_error(xs, ys, trial);
                if (std::isfinite(trial_sse) && trial_sse <= sse) {
                    p = trial;
                    sse = trial_sse;
                    lambda = std::max(lambda / 3.0, 1e-300);
                    accepted = true;
                    break;
                }
            }
            lambda *= 4.0;
        }

        const double p_norm = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
        const double step_norm = accepted ? std::sqrt(step[0] * step[0] + step[1] * step[1] + step[2] * step[2]) : 0.0;
        const bool small_step = step_norm <= kRelTol * (p_norm + kRelTol);

        if (!accepted || (small_step && flat_gradient)) {
            fit.converged = flat_gradient;
            break;
        }
    }

    fit.a = p[0];
    fit.k = p[1];
    fit.x0 = p[2];
    fit.rmse = std::sqrt(sse / static_cast<double>(n));
    return fit;
}

}  // namespace detail

inline double LogisticFit::operator()(double x) const noexcept { return a * detail::sigmoid(k * (x - x0)); }

/// Fits a/(1 + exp(-k (x - x0))) by Levenberg-Marquardt from several starts
/// (x0 at the quartiles of xs, a at max(ys), k signed by the empirical slope)
/// and keeps the lowest-rmse converged result.
///
/// Constant ys (no transition) and fits that end with a vanishing growth rate
/// or a non-positive asymptote are reported with converged = false.
inline LogisticFit fit_logistic(std::span<const double> xs_in, std::span<const double> ys_in)
{
    if (xs_in.size() != ys_in.size()) {
        throw std::invalid_argument("fit_logistic: xs and ys differ in length");
    }
    if (xs_in.size() < 4) {
        throw std::invalid_argument("fit_logistic: need at least 4 points");
    }

    // Canonical point order makes the result independent of input order.
    std::vector<std::size_t> order(xs_in.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return xs_in[i] < xs_in[j]; });
    std::vector<double> xs;
    std::vector<double> ys;
    for (auto i : order) {
        xs.push_back(xs_in[i]);
        ys.push_back(ys_in[i]);
    }
    for (std::size_t i = 1; i < xs.size(); ++i) {
        if (!(xs[i] > xs[i - 1])) {
            throw std::invalid_argument("fit_logistic: xs must be distinct");
        }
    }

    const double x_range = xs.back() - xs.front();
    const auto [y_min_it, y_max_it] = std::minmax_element(ys.begin(), ys.end());
    const double y_min = *y_min_it;
    const double y_max = *y_max_it;

    const double n = static_cast<double>(xs.size());
    const double x_mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    const double y_mean = std::accumulate(ys.begin(), ys.end(), 0.0) / n;

    if (y_max - y_min <= 1e-12 * std::max(1.0, std::fabs(y_max))) {
        LogisticFit flat;
        flat.a = 2.0 * y_mean;
        flat.k = 0.0;
        flat.x0 = quantile_sorted(xs, 0.5);
        double sse = 0.0;
        for (double y : ys) {
            sse += (y - y_mean) * (y - y_mean);
        }
        flat.rmse = std::sqrt(sse / n);
        flat.converged = false;
        return flat;
    }

    double cov = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        cov += (xs[i] - x_mean) * (ys[i] - y_mean);
    }
    const double slope_sign = cov < 0.0 ? -1.0 : 1.0;

    const std::array<double, 3> x0_starts{quantile_sorted(xs, 0.25), quantile_sorted(xs, 0.5),
                                          quantile_sorted(xs, 0.75)};
    const std::array<double, 3> k_scales{4.0, 16.0, 64.0};

    LogisticFit best;
    bool have_best = false;
    for (double x0 : x0_starts) {
        for (double scale : k_scales) {
            LogisticFit fit = detail::levenberg_marquardt(xs, ys, {y_max, slope_sign * scale / x_range, x0});
            // A midpoint far outside the data means the curve is flat over it.
            const bool midpoint_off_data = fit.x0 < xs.front() - x_range || fit.x0 > xs.back() + x_range;
            if (!(fit.a > 0.0) || std::fabs(fit.k) * x_range < 1e-6 || midpoint_off_data ||
                !std::isfinite(fit.rmse)) {
                fit.converged = false;
            }
            const bool better = !have_best || (fit.converged && !best.converged) ||
                                (fit.converged == best.converged && fit.rmse < best.rmse);
            if (better) {
                best = fit;
                have_best = true;
            }
        }
    }
    return best;
}

}  // namespace arm
