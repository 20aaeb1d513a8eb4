#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "arm/metrics.hpp"
#include "arm/population.hpp"

namespace {

TEST(Polarization, HalfAtEachExtremeIsQuarter)
{
    std::vector<double> xs(100, 0.0);
    std::fill(xs.begin() + 50, xs.end(), 1.0);
    EXPECT_DOUBLE_EQ(arm::polarization_1d(xs), 0.25);
}

TEST(Polarization, ConsensusIsZero)
{
    const std::vector<double> xs(37, 0.42);
    EXPECT_EQ(arm::polarization_1d(xs), 0.0);
}

TEST(Polarization, ThreePointsUsesPopulationDenominator)
{
    // {0, 0.5, 1}: mean 0.5, squared deviations 0.25 + 0 + 0.25, divided by 3
    EXPECT_NEAR(arm::polarization_1d(std::vector<double>{0.0, 0.5, 1.0}), 1.0 / 6.0, 1e-15);
}

TEST(Polarization, SplitMatchesBernoulliVariance)
{
    // p of the actors at 0 and the rest at 1: variance p (1 - p)
    for (int k : {10, 20, 30, 50}) {
        std::vector<double> xs(100, 1.0);
        std::fill(xs.begin(), xs.begin() + k, 0.0);
        const double p = k / 100.0;
        EXPECT_NEAR(arm::polarization_1d(xs), p * (1.0 - p), 1e-14);
    }
}

TEST(Polarization, EmptyThrows)
{
    EXPECT_THROW(arm::polarization_1d(std::vector<double>{}), std::invalid_argument);
}

TEST(PolarizationTrace, OppositeCornersIsHalf)
{
    arm::Population pop(2, {0.0, 0.0, 0.0, 0.0, 1.0, 1.0, 1.0, 1.0});
    EXPECT_DOUBLE_EQ(arm::polarization_trace(pop), 0.5);
}

TEST(PolarizationTrace, SumOfPerAxisVariances)
{
    const std::vector<double> pos{0.1, 0.9, 0.3, 0.5, 0.5, 0.1, 0.7, 0.7};
    const std::vector<double> x{0.1, 0.3, 0.5, 0.7};
    const std::vector<double> y{0.9, 0.5, 0.1, 0.7};
    EXPECT_NEAR(arm::polarization_trace(pos, 2), arm::polarization_1d(x) + arm::polarization_1d(y), 1e-15);
}

TEST(PolarizationTrace, OneDimensionMatchesVariance)
{
    const std::vector<double> xs{0.2, 0.4, 0.9};
    EXPECT_DOUBLE_EQ(arm::polarization_trace(xs, 1), arm::polarization_1d(xs));
}

TEST(Polarization, StableForNearlyConstantData)
{
    // single-pass E[x^2] - E[x]^2 loses every digit here
    std::vector<double> xs;
    for (int i = 0; i < 1000; ++i) {
        xs.push_back(0.7 + ((i % 2) ? 1e-9 : -1e-9));
    }
    EXPECT_NEAR(arm::polarization_1d(xs), 1e-18, 1e-21);
}

/// Type-7 quantile written independently: position 1 + (n - 1) p, 1-based.
double reference_quantile(std::vector<double> v, double p)
{
    std::sort(v.begin(), v.end());
    const double pos = 1.0 + (static_cast<double>(v.size()) - 1.0) * p;
    const double lo = std::floor(pos);
    const double frac = pos - lo;
    const auto i = static_cast<std::size_t>(lo) - 1;
    if (i + 1 >= v.size()) {
        return v.back();
    }
    return (1.0 - frac) * v[i] + frac * v[i + 1];
}

TEST(Quantiles, MatchReference)
{
    const std::vector<double> v{0.25, 0.01, 0.22, 0.24, 0.0, 0.18, 0.25, 0.2, 0.11, 0.23};
    std::vector<double> sorted = v;
    std::sort(sorted.begin(), sorted.end());
    for (double p : {0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0}) {
        EXPECT_NEAR(arm::quantile_sorted(sorted, p), reference_quantile(v, p), 1e-15) << p;
    }
}

TEST(Quantiles, KnownValues)
{
    const std::vector<double> v{1, 2, 3, 4};
    EXPECT_DOUBLE_EQ(arm::quantile_sorted(v, 0.25), 1.75);
    EXPECT_DOUBLE_EQ(arm::quantile_sorted(v, 0.5), 2.5);
    EXPECT_DOUBLE_EQ(arm::quantile_sorted(v, 0.75), 3.25);
}

TEST(CellSummary, StatisticsAndTukeyWhiskers)
{
    // quartiles of 1..9 plus an outlier at 40 (type 7): q1 = 3.25, q3 = 7.75
    const std::vector<double> v{5, 1, 9, 2, 8, 3, 7, 4, 6, 40};
    const auto s = arm::aggregate_sweep_cell(v);
    EXPECT_DOUBLE_EQ(s.mean, 8.5);
    double sq = 0.0;
    for (double x : v) {
        sq += (x - 8.5) * (x - 8.5);
    }
    EXPECT_NEAR(s.sd, std::sqrt(sq / 10.0), 1e-12);
    EXPECT_DOUBLE_EQ(s.q1, 3.25);
    EXPECT_DOUBLE_EQ(s.median, 5.5);
    EXPECT_DOUBLE_EQ(s.q3, 7.75);
    EXPECT_DOUBLE_EQ(s.lower_fence, 3.25 - 1.5 * 4.5);
    EXPECT_DOUBLE_EQ(s.upper_fence, 7.75 + 1.5 * 4.5);
    EXPECT_DOUBLE_EQ(s.whisker_low, 1.0);
    EXPECT_DOUBLE_EQ(s.whisker_high, 9.0);
}

TEST(CellSummary, SingleValue)
{
    const std::vector<double> v{0.2};
    const auto s = arm::aggregate_sweep_cell(v);
    EXPECT_EQ(s.mean, 0.2);
    EXPECT_EQ(s.sd, 0.0);
    EXPECT_EQ(s.whisker_low, 0.2);
    EXPECT_EQ(s.whisker_high, 0.2);
}

}  // namespace
