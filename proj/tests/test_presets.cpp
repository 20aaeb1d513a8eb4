#include <cmath>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "arm/commands.hpp"
#include "arm/presets.hpp"

namespace {

namespace fs = std::filesystem;

TEST(Presets, EveryIdBuildsAndValidates)
{
    for (const auto& id : arm::preset_ids()) {
        const auto p = arm::make_preset(id);
        EXPECT_FALSE(p.runs.empty() && p.sweeps.empty()) << id;
        for (const auto& r : p.runs) {
            EXPECT_NO_THROW(r.config.validate()) << r.name;
        }
        for (const auto& s : p.sweeps) {
            for (const auto& values : arm::sweep_cells(s.spec)) {
                EXPECT_NO_THROW(arm::cell_config(s.spec, values, 0).validate()) << s.name;
            }
        }
    }
}

TEST(Presets, UnknownIdListsValidIds)
{
    try {
        arm::make_preset("fig10");
        FAIL();
    }
    catch (const arm::ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("figS7"), std::string::npos);
    }
}

TEST(Presets, Fig3Grid)
{
    const auto p = arm::make_preset("fig3");
    ASSERT_EQ(p.sweeps.size(), 1u);
    const auto& spec = p.sweeps[0].spec;
    EXPECT_EQ(spec.base.max_steps, 1'000'000u);
    EXPECT_EQ(spec.iterations, 20u);
    EXPECT_EQ(arm::sweep_cells(spec).size(), 400u);
    EXPECT_EQ(spec.axes[0].values.front(), 0.05);
    EXPECT_EQ(spec.axes[1].values.back(), 1.0);
}

TEST(Presets, Fig9ShockGrid)
{
    const auto p = arm::make_preset("fig9");
    const auto& spec = p.sweeps[0].spec;
    EXPECT_EQ(spec.base.max_steps, 2'000'000u);
    EXPECT_EQ(spec.axes[0].values.size(), 17u);
    EXPECT_EQ(spec.axes[1].values, (std::vector<double>{1e5, 2e5, 3e5, 4e5, 5e5, 6e5, 7e5, 8e5, 9e5}));
}

TEST(Presets, FigS4HasThreeFittedSweeps)
{
    const auto p = arm::make_preset("figS4");
    ASSERT_EQ(p.sweeps.size(), 3u);
    for (const auto& s : p.sweeps) {
        EXPECT_TRUE(s.fit);
        EXPECT_EQ(s.spec.axes.size(), 1u);
    }
}

TEST(Presets, ScaleAndIterationOverride)
{
    arm::PresetOptions opts;
    opts.scale = 0.01;
    opts.iterations = 2;
    opts.master_seed = 5;
    const auto p = arm::make_preset("fig8", opts);
    EXPECT_EQ(p.runs[0].config.max_steps, 25'000u);
    EXPECT_EQ(p.runs[0].config.shock->at_step, 5'000u);
    EXPECT_EQ(p.runs[0].config.snapshot_steps, (std::vector<std::uint64_t>{5000, 5010, 25000}));
    EXPECT_EQ(p.runs[0].config.seed, arm::derive_seed_list(5, 1)[0]);
    const auto q = arm::make_preset("fig9", opts);
    EXPECT_EQ(q.sweeps[0].spec.iterations, 2u);
    EXPECT_EQ(q.sweeps[0].spec.axes[1].values.front(), 1000.0);
    EXPECT_THROW(arm::make_preset("fig1", {0, std::nullopt, 0.0}), arm::ConfigError);
}

TEST(Presets, RunTogetherEqualsRunSeparately)
{
    arm::PresetOptions opts;
    opts.scale = 0.002;
    opts.iterations = 2;
    const auto base = fs::temp_directory_path() / "arm_test_presets";
    fs::remove_all(base);
    arm::cmd_preset({"fig2", "figS2"}, base / "together", opts, 2);
    arm::cmd_preset({"figS2"}, base / "alone", opts, 1);
    arm::cmd_preset({"fig2"}, base / "alone", opts, 1);
    for (const auto& id : {"fig2", "figS2"}) {
        for (const auto& entry : fs::directory_iterator(base / "together" / id)) {
            if (entry.path().filename() == "manifest.json") {
                continue;
            }
            std::ifstream a(entry.path());
            std::ifstream b(base / "alone" / id / entry.path().filename());
            ASSERT_TRUE(b) << entry.path();
            std::string sa((std::istreambuf_iterator<char>(a)), {});
            std::string sb((std::istreambuf_iterator<char>(b)), {});
            EXPECT_EQ(sa, sb) << entry.path();
        }
    }
}

TEST(Presets, ManifestArtifactsExistAndAreNonEmpty)
{
    arm::PresetOptions opts;
    opts.scale = 0.002;
    opts.iterations = 2;
    const auto dir = fs::temp_directory_path() / "arm_test_manifest";
    fs::remove_all(dir);
    const auto ms = arm::cmd_preset({"figS4", "fig8"}, dir, opts, 1);
    ASSERT_EQ(ms.size(), 2u);
    for (const auto& m : ms) {
        const auto sub = dir / (m.command == "preset figS4" ? "figS4" : "fig8");
        EXPECT_FALSE(m.artifacts.empty());
        for (const auto& a : m.artifacts) {
            EXPECT_TRUE(fs::exists(sub / a)) << a;
            EXPECT_GT(fs::file_size(sub / a), 0u) << a;
        }
        EXPECT_TRUE(fs::exists(sub / "manifest.json"));
    }
}

TEST(Presets, RepulsionCurveColumns)
{
    const auto p = arm::make_preset("figS2");
    ASSERT_EQ(p.curves.size(), 1u);
    const auto text = arm::detail::curve_csv(p.curves[0]);
    EXPECT_EQ(text.substr(0, text.find('\n')), "distance,k=2,k=4,k=8,k=16,k=32,k=64,k=inf");
    // the row at d = T holds 0.5 for every finite k
    EXPECT_NE(text.find("\n0.25,0.5,0.5,0.5,0.5,0.5,0.5,0\n"), std::string::npos);
}

}  // namespace
