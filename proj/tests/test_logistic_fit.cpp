#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "arm/logistic_fit.hpp"
#include "arm/rng.hpp"
#include "arm/sweep.hpp"

namespace {

double logistic(double a, double k, double x0, double x) { return a / (1.0 + std::exp(-k * (x - x0))); }

double sse(const arm::LogisticFit& f, const std::vector<double>& xs, const std::vector<double>& ys)
{
    double s = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        s += (f(xs[i]) - ys[i]) * (f(xs[i]) - ys[i]);
    }
    return s;
}

TEST(FitLogistic, RecoversNoiselessDecreasingCurve)
{
    const auto xs = arm::grid(0.05, 1.0, 0.05);
    std::vector<double> ys;
    for (double x : xs) {
        ys.push_back(logistic(0.25, -60.0, 0.284, x));
    }
    const auto f = arm::fit_logistic(xs, ys);
    EXPECT_TRUE(f.converged);
    EXPECT_NEAR(f.a, 0.25, 1e-6);
    EXPECT_NEAR(f.k, -60.0, 1e-4);
    EXPECT_NEAR(f.x0, 0.284, 1e-7);
    EXPECT_LT(f.rmse, 1e-8);
}

TEST(FitLogistic, RecoversNoiselessIncreasingCurve)
{
    const auto xs = arm::grid(0.05, 0.5, 0.05);
    std::vector<double> ys;
    for (double x : xs) {
        ys.push_back(logistic(0.24, 100.0, 0.063, x));
    }
    const auto f = arm::fit_logistic(xs, ys);
    EXPECT_TRUE(f.converged);
    EXPECT_NEAR(f.k, 100.0, 1e-3);
    EXPECT_NEAR(f.x0, 0.063, 1e-7);
}

TEST(FitLogistic, NoisyDataIsLeastSquaresOptimal)
{
    const auto xs = arm::grid(0.05, 1.0, 0.05);
    arm::Rng rng(2024);
    std::vector<double> ys;
    for (double x : xs) {
        ys.push_back(logistic(0.25, -60.0, 0.284, x) + rng.normal(0.0, 0.005));
    }
    const auto f = arm::fit_logistic(xs, ys);
    ASSERT_TRUE(f.converged);
    arm::LogisticFit truth;
    truth.a = 0.25;
    truth.k = -60.0;
    truth.x0 = 0.284;
    // a least-squares fit can be no worse than the generating parameters
    EXPECT_LE(sse(f, xs, ys), sse(truth, xs, ys));
    EXPECT_NEAR(f.x0, 0.284, 0.01);
    EXPECT_LT(f.k, 0.0);
    EXPECT_NEAR(f.a, 0.25, 0.01);
    EXPECT_NEAR(f.rmse, std::sqrt(sse(f, xs, ys) / static_cast<double>(xs.size())), 1e-15);
}

TEST(FitLogistic, GradientVanishesAtSolution)
{
    const auto xs = arm::grid(0.05, 1.0, 0.05);
    arm::Rng rng(77);
    std::vector<double> ys;
    for (double x : xs) {
        ys.push_back(logistic(0.2, 15.0, 0.16, x) + rng.normal(0.0, 0.01));
    }
    const auto f = arm::fit_logistic(xs, ys);
    ASSERT_TRUE(f.converged);
    // central-difference check that no parameter nudge lowers the SSE
    const double base = sse(f, xs, ys);
    for (int p = 0; p < 3; ++p) {
        for (double h : {1e-4, -1e-4}) {
            auto g = f;
            (p == 0 ? g.a : p == 1 ? g.k : g.x0) += h;
            EXPECT_GE(sse(g, xs, ys), base - 1e-14);
        }
    }
}

TEST(FitLogistic, ConstantDataIsUnconverged)
{
    const std::vector<double> xs{0.1, 0.2, 0.3, 0.4, 0.5};
    const std::vector<double> ys(5, 0.25);
    const auto f = arm::fit_logistic(xs, ys);
    EXPECT_FALSE(f.converged);
    EXPECT_EQ(f.k, 0.0);
    EXPECT_NEAR(f(0.3), 0.25, 1e-15);
}

TEST(FitLogistic, InputOrderDoesNotMatter)
{
    auto xs = arm::grid(0.05, 1.0, 0.05);
    arm::Rng rng(9);
    std::vector<double> ys;
    for (double x : xs) {
        ys.push_back(logistic(0.25, -40.0, 0.3, x) + rng.normal(0.0, 0.01));
    }
    const auto f1 = arm::fit_logistic(xs, ys);
    std::vector<std::size_t> perm(xs.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::reverse(perm.begin(), perm.end());
    std::rotate(perm.begin(), perm.begin() + 7, perm.end());
    std::vector<double> xs2;
    std::vector<double> ys2;
    for (auto i : perm) {
        xs2.push_back(xs[i]);
        ys2.push_back(ys[i]);
    }
    const auto f2 = arm::fit_logistic(xs2, ys2);
    EXPECT_EQ(f1.a, f2.a);
    EXPECT_EQ(f1.k, f2.k);
    EXPECT_EQ(f1.x0, f2.x0);
}

TEST(FitLogistic, MirroredDataFlipsSlopeAndMidpoint)
{
    const auto xs = arm::grid(0.05, 1.0, 0.05);
    std::vector<double> ys;
    std::vector<double> mirrored;
    for (double x : xs) {
        ys.push_back(logistic(0.25, -30.0, 0.4, x));
        mirrored.push_back(-x);
    }
    const auto f = arm::fit_logistic(xs, ys);
    const auto g = arm::fit_logistic(mirrored, ys);
    EXPECT_NEAR(g.k, -f.k, 1e-4);
    EXPECT_NEAR(g.x0, -f.x0, 1e-7);
    EXPECT_NEAR(g.a, f.a, 1e-7);
}

TEST(FitLogistic, RejectsBadInput)
{
    const std::vector<double> three{0.1, 0.2, 0.3};
    EXPECT_THROW(arm::fit_logistic(three, three), std::invalid_argument);
    const std::vector<double> xs{0.1, 0.2, 0.2, 0.3};
    const std::vector<double> ys{1, 2, 3, 4};
    EXPECT_THROW(arm::fit_logistic(xs, ys), std::invalid_argument);
    const std::vector<double> short_ys{1, 2, 3};
    EXPECT_THROW(arm::fit_logistic(ys, short_ys), std::invalid_argument);
}

}  // namespace
