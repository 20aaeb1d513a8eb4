// Randomized invariants over many generated configurations.

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "arm/dynamics.hpp"
#include "arm/engine.hpp"
#include "arm/metrics.hpp"

namespace {

constexpr int kConfigs = 1200;

arm::SimConfig random_config(std::mt19937_64& gen)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    arm::SimConfig cfg;
    cfg.n_actors = std::uniform_int_distribution<std::size_t>(2, 40)(gen);
    cfg.n_dims = std::uniform_int_distribution<std::size_t>(1, 3)(gen);
    const double diameter = std::sqrt(static_cast<double>(cfg.n_dims));
    cfg.tolerance = 0.01 + 0.98 * diameter * u(gen);
    cfg.responsiveness = 0.01 + 0.99 * u(gen);
    cfg.exposure.clear();
    for (std::size_t d = 0; d < cfg.n_dims; ++d) {
        cfg.exposure.push_back(0.02 + 0.5 * u(gen));
    }
    if (u(gen) < 0.4) {
        cfg.rule = arm::SarRule{u(gen) < 0.2 ? std::numeric_limits<double>::infinity() : 1.1 + 30.0 * u(gen)};
    }
    if (u(gen) < 0.3) {
        cfg.self_interest_prob = u(gen);
    }
    cfg.max_steps = 600;
    if (u(gen) < 0.3) {
        cfg.shock = arm::Shock{std::vector<double>(cfg.n_dims, u(gen)), 1 + gen() % 200};
    }
    cfg.initializer = arm::NormalInit{0.3 + 0.4 * u(gen), 0.05 + 0.25 * u(gen)};
    cfg.seed = gen();
    return cfg;
}

TEST(Properties, RandomRunsStayBoundedAndLeavePassiveActorsAlone)
{
    std::mt19937_64 gen(20240601);
    for (int c = 0; c < kConfigs; ++c) {
        const auto cfg = random_config(gen);
        ASSERT_NO_THROW(cfg.validate());
        arm::Engine e(cfg);
        const double cap = 0.25 * static_cast<double>(cfg.n_dims);
        while (!e.finished()) {
            const std::vector<double> before(e.population().positions().begin(), e.population().positions().end());
            const auto out = e.step();
            const auto after = e.population().positions();
            for (std::size_t i = 0; i < after.size(); ++i) {
                ASSERT_GE(after[i], 0.0);
                ASSERT_LE(after[i], 1.0);
                if (i / cfg.n_dims != out.active_index) {
                    ASSERT_EQ(after[i], before[i]) << "config " << c;
                }
            }
            ASSERT_LE(e.polarization(), cap + 1e-12);
        }
    }
}

TEST(Properties, HalvingLaw)
{
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < kConfigs; ++i) {
        const double e = 0.01 + u(gen);
        const double d = 2.0 * u(gen);
        const double p = arm::interaction_probability(d, e);
        EXPECT_NEAR(arm::interaction_probability(d + e, e), p / 2.0, 1e-14);
        EXPECT_NEAR(arm::interaction_probability(e, e), 0.5, 1e-15);
        EXPECT_LE(p, 1.0);
        EXPECT_GT(p, 0.0);
    }
}

TEST(Properties, RepulsionNeverReducesDistanceAndAttractionNeverIncreasesIt)
{
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < kConfigs; ++i) {
        const std::size_t dims = 1 + gen() % 3;
        std::vector<double> x(dims);
        std::vector<double> y(dims);
        for (std::size_t d = 0; d < dims; ++d) {
            x[d] = u(gen);
            y[d] = u(gen);
        }
        const double r = 0.01 + 0.99 * u(gen);
        const double dist = arm::euclidean_distance(x, y);
        std::vector<double> rep = x;
        arm::repulse(rep, y, r);
        EXPECT_GE(arm::euclidean_distance(rep, y), dist - 1e-15);
        std::vector<double> att = x;
        arm::attract(att, y, r);
        EXPECT_NEAR(arm::euclidean_distance(att, y), (1.0 - r) * dist, 1e-12);
        // away from the walls, repulsion scales the gap by exactly (1 + R)
        if (dims == 1 && x[0] - r * (y[0] - x[0]) > 0.0 && x[0] - r * (y[0] - x[0]) < 1.0) {
            EXPECT_NEAR(arm::euclidean_distance(rep, y), (1.0 + r) * dist, 1e-12);
        }
    }
}

TEST(Properties, StochasticRuleEndpoints)
{
    std::mt19937_64 gen(13);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < kConfigs; ++i) {
        const std::size_t dims = 1 + gen() % 4;
        const double diameter = std::sqrt(static_cast<double>(dims));
        const double t = (0.01 + 0.98 * u(gen)) * diameter;
        const double k = 1.01 + 100.0 * u(gen);
        EXPECT_NEAR(arm::sar_repulsion_probability(t, k, t, dims), 0.5, 1e-9);
        EXPECT_DOUBLE_EQ(arm::sar_repulsion_probability(diameter, k, t, dims), 1.0);
        EXPECT_DOUBLE_EQ(arm::sar_repulsion_probability(0.0, k, t, dims), 0.0);
        const double d = u(gen) * diameter;
        const double f = arm::sar_repulsion_probability(d, k, t, dims);
        EXPECT_GE(f, 0.0);
        EXPECT_LE(f, 1.0);
    }
}

TEST(Properties, VarianceAtMostQuarterPerDimension)
{
    std::mt19937_64 gen(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < kConfigs; ++i) {
        const std::size_t dims = 1 + gen() % 3;
        const std::size_t n = 1 + gen() % 60;
        std::vector<double> pos(n * dims);
        for (auto& v : pos) {
            // bias toward the walls where the bound is tight
            const double r = u(gen);
            v = r < 0.4 ? 0.0 : r > 0.6 ? 1.0 : u(gen);
        }
        EXPECT_LE(arm::polarization_trace(pos, dims), 0.25 * static_cast<double>(dims) + 1e-15);
    }
}

}  // namespace
