#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "arm/config.hpp"
#include "arm/dynamics.hpp"
#include "arm/initialization.hpp"
#include "arm/interventions.hpp"
#include "arm/metrics.hpp"
#include "arm/population.hpp"
#include "arm/rng.hpp"

namespace arm {

enum class StepKind
{
    NoInteraction,
    Attracted,
    Repulsed,
    SelfInterest,
    ShockApplied,
};

/// What happened during one step. `partner` is set for Attracted/Repulsed
/// and for NoInteraction when a partner was drawn but the interaction coin failed.
struct StepOutcome
{
    std::size_t active_index = 0;
    StepKind kind = StepKind::NoInteraction;
    std::optional<std::size_t> partner;
    std::vector<double> new_position;

    bool moved() const noexcept { return kind != StepKind::NoInteraction; }
};

struct TrajectoryPoint
{
    std::uint64_t step = 0;
    double polarization = 0.0;
    bool operator==(const TrajectoryPoint&) const = default;
};

struct Snapshot
{
    std::uint64_t step = 0;
    std::vector<double> positions;  // row-major, n_actors * n_dims
    bool operator==(const Snapshot&) const = default;
};

struct TrajectoryRecord
{
    std::size_t n_dims = 1;
    std::vector<TrajectoryPoint> series;
    std::vector<Snapshot> snapshots;
    bool operator==(const TrajectoryRecord&) const = default;
};

/// One seeded run of the attraction-repulsion Markov chain.
///
/// Random draws within a step happen in a fixed order:
///   1. self-interest coin (only when self_interest_prob > 0)
///   2. active actor index
///   3. passive actor index, redrawn until distinct from the active one
///   4. interaction coin
///   5. repulsion coin (stochastic rule with finite steepness only)
/// Shock steps draw nothing. Initialization consumes the same generator
/// before the first step.
class Engine
{
public:
    explicit Engine(SimConfig cfg) : cfg_(validated(std::move(cfg))), rng_(cfg_.seed), pop_(initialize(cfg_, rng_))
    {
        prepare();
    }

    /// Starts from a given population instead of the configured initializer.
    Engine(SimConfig cfg, Population pop) : cfg_(validated(std::move(cfg))), rng_(cfg_.seed), pop_(std::move(pop))
    {
        if (pop_.size() != cfg_.n_actors || pop_.dims() != cfg_.n_dims) {
            throw ConfigError("n_actors", "population shape does not match config");
        }
        prepare();
    }

    const SimConfig& config() const noexcept { return cfg_; }
    const Population& population() const noexcept { return pop_; }
    std::uint64_t steps_taken() const noexcept { return steps_; }
    bool finished() const noexcept { return steps_ >= cfg_.max_steps; }

    double polarization() const { return polarization_trace(pop_); }

    StepOutcome step()
    {
        if (finished()) {
            throw std::out_of_range("Engine::step: step budget exhausted");
        }
        std::size_t active = 0;
        std::size_t partner = kNoPartner;
        const StepKind kind = step_impl(active, partner);
        StepOutcome out;
        out.active_index = active;
        out.kind = kind;
        if (partner != kNoPartner) {
            out.partner = partner;
        }
        const auto x = pop_.position(active);
        out.new_position.assign(x.begin(), x.end());
        return out;
    }

    /// Runs `n` steps (bounded by the remaining budget) without reporting.
    void advance(std::uint64_t n)
    {
        const std::uint64_t end = std::min(cfg_.max_steps, steps_ + n);
        std::size_t active = 0;
        std::size_t partner = 0;
        while (steps_ < end) {
            step_impl(active, partner);
        }
    }

    /// Runs to max_steps, recording polarization at step 0, every
    /// record_every steps and at the final step, plus the requested snapshots.
    TrajectoryRecord run()
    {
        TrajectoryRecord rec;
        rec.n_dims = cfg_.n_dims;
        std::vector<std::uint64_t> snaps = cfg_.snapshot_steps;
        std::sort(snaps.begin(), snaps.end());
        snaps.erase(std::unique(snaps.begin(), snaps.end()), snaps.end());
        auto next_snap = std::lower_bound(snaps.begin(), snaps.end(), steps_);

        auto observe = [&] {
            if (steps_ % cfg_.record_every == 0 || steps_ == cfg_.max_steps) {
                rec.series.push_back({steps_, polarization()});
            }
            if (next_snap != snaps.end() && *next_snap == steps_) {
                rec.snapshots.push_back({steps_, std::vector<double>(pop_.positions().begin(), pop_.positions().end())});
                ++next_snap;
            }
        };

        observe();
        while (!finished()) {
            std::uint64_t target = (steps_ / cfg_.record_every + 1) * cfg_.record_every;
            if (next_snap != snaps.end()) {
                target = std::min(target, *next_snap);
            }
            advance(std::min(target, cfg_.max_steps) - steps_);
            observe();
        }
        return rec;
    }

    /// Polarization after running out the remaining budget.
    double run_to_end()
    {
        advance(cfg_.max_steps - steps_);
        return polarization();
    }

private:
    static constexpr std::size_t kNoPartner = static_cast<std::size_t>(-1);

    static SimConfig validated(SimConfig cfg)
    {
        cfg.validate();
        return cfg;
    }

    void prepare()
    {
        n_ = pop_.size();
        stochastic_ = cfg_.stochastic_rule() && !std::isinf(cfg_.steepness());
        steepness_ = cfg_.steepness();
        if (cfg_.shock) {
            shock_ = ShockState{cfg_.shock->strength, cfg_.shock->at_step, 0};
        }
    }

    StepKind step_impl(std::size_t& active, std::size_t& partner)
    {
        const std::uint64_t now = steps_++;
        partner = kNoPartner;

        if (shock_ && shock_->due(now, n_)) {
            active = shock_->next_actor;
            shock_step(pop_, *shock_);
            return StepKind::ShockApplied;
        }

        if (cfg_.self_interest_prob > 0.0 && rng_.uniform() < cfg_.self_interest_prob) {
            active = rng_.index(n_);
            self_interest_move_into(pop_.position(active), pop_.preferred(active), cfg_.responsiveness);
            return StepKind::SelfInterest;
        }

        active = rng_.index(n_);
        if (n_ < 2) {
            return StepKind::NoInteraction;
        }
        do {
            partner = rng_.index(n_);
        } while (partner == active);

        const auto x = pop_.position(active);
        const auto y = std::as_const(pop_).position(partner);

        double p_interact = 0.0;
        if (cfg_.n_dims == 1) {
            p_interact = std::exp2(-std::fabs(x[0] - y[0]) / cfg_.exposure[0]);
        }
        else {
            p_interact = std::exp2(-scaled_distance(x, y, cfg_.exposure));
        }
        if (!(rng_.uniform() < p_interact)) {
            return StepKind::NoInteraction;
        }

        const double distance = euclidean_distance(x, y);
        bool repel = false;
        if (stochastic_) {
            repel = rng_.uniform() < sar_repulsion_probability(distance, steepness_, cfg_.tolerance, cfg_.n_dims);
        }
        else {
            repel = !attracts(distance, cfg_.tolerance);
        }
        if (repel) {
            repulse(x, y, cfg_.responsiveness);
            return StepKind::Repulsed;
        }
        attract(x, y, cfg_.responsiveness);
        return StepKind::Attracted;
    }

    SimConfig cfg_;
    Rng rng_;
    Population pop_;
    std::uint64_t steps_ = 0;
    std::size_t n_ = 0;
    bool stochastic_ = false;
    double steepness_ = 0.0;
    std::optional<ShockState> shock_;
};

/// Final polarization of one full run of `cfg`.
inline double final_polarization(const SimConfig& cfg)
{
    Engine engine(cfg);
    return engine.run_to_end();
}

}  // namespace arm
