#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "arm/dynamics.hpp"
#include "arm/population.hpp"

namespace arm {

/// active <- active + R (preferred - active), clamped.
inline void self_interest_move_into(std::span<double> active, std::span<const double> preferred,
                                    double responsiveness) noexcept
{
    attract(active, preferred, responsiveness);
}

inline std::vector<double> self_interest_move(std::span<const double> active, std::span<const double> preferred,
                                              double responsiveness)
{
    std::vector<double> out(active.begin(), active.end());
    self_interest_move_into(out, preferred, responsiveness);
    return out;
}

inline double self_interest_move(double active, double preferred, double responsiveness)
{
    return self_interest_move(std::span<const double>(&active, 1), std::span<const double>(&preferred, 1),
                              responsiveness)[0];
}

inline double shocked_coordinate(double x, double delta) noexcept { return std::max(0.0, std::min(1.0, x + delta)); }

/// Progress of a population-wide shift applied to one actor per step,
/// actor i at step start_step + i.
struct ShockState
{
    std::vector<double> strength;
    std::uint64_t start_step = 0;
    std::size_t next_actor = 0;

    bool complete(std::size_t n_actors) const noexcept { return next_actor >= n_actors; }

    bool due(std::uint64_t step, std::size_t n_actors) const noexcept
    {
        return step >= start_step && !complete(n_actors);
    }
};

/// Shifts the actor under the cursor by the shock strength and advances the cursor.
inline void shock_step(Population& pop, ShockState& shock)
{
    if (shock.complete(pop.size())) {
        throw std::logic_error("shock_step: shock already complete");
    }
    auto x = pop.position(shock.next_actor);
    for (std::size_t d = 0; d < x.size(); ++d) {
        x[d] = shocked_coordinate(x[d], shock.strength[d]);
    }
    ++shock.next_actor;
}

}  // namespace arm
