#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace arm {

/// Actor positions in [0,1]^D, stored row-major, together with the frozen
/// initial (preferred) positions used by the self-interest intervention.
class Population
{
public:
    Population(std::size_t n_dims, std::vector<double> positions)
        : dims_(n_dims), positions_(std::move(positions)), preferred_(positions_)
    {
        if (dims_ == 0 || positions_.size() % dims_ != 0) {
            throw std::invalid_argument("Population: position count is not a multiple of n_dims");
        }
    }

    /// Current positions that differ from the preferred ones.
    Population(std::size_t n_dims, std::vector<double> positions, std::vector<double> preferred)
        : Population(n_dims, std::move(positions))
    {
        if (preferred.size() != positions_.size()) {
            throw std::invalid_argument("Population: preferred positions differ in shape");
        }
        preferred_ = std::move(preferred);
    }

    std::size_t size() const noexcept { return dims_ == 0 ? 0 : positions_.size() / dims_; }
    std::size_t dims() const noexcept { return dims_; }

    std::span<const double> position(std::size_t i) const noexcept
    {
        return {positions_.data() + i * dims_, dims_};
    }
    std::span<double> position(std::size_t i) noexcept { return {positions_.data() + i * dims_, dims_}; }

    std::span<const double> preferred(std::size_t i) const noexcept
    {
        return {preferred_.data() + i * dims_, dims_};
    }

    std::span<const double> positions() const noexcept { return positions_; }
    std::span<const double> preferred_positions() const noexcept { return preferred_; }

    /// Copy of one coordinate across all actors.
    std::vector<double> coordinate(std::size_t dim) const
    {
        std::vector<double> out;
        out.reserve(size());
        for (std::size_t i = dim; i < positions_.size(); i += dims_) {
            out.push_back(positions_[i]);
        }
        return out;
    }

private:
    std::size_t dims_;
    std::vector<double> positions_;
    std::vector<double> preferred_;
};

}  // namespace arm
