#include "synthcast/data/quantile_grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace synthcast::data {

std::size_t level_index(std::span<const double> levels, double level) {
    for (std::size_t i = 0; i < levels.size(); ++i)
        if (std::abs(levels[i] - level) < 1e-12) return i;
    throw std::out_of_range("quantile level " + std::to_string(level) + " is not on the grid");
}

const std::array<std::size_t, kNumEvalLevels>& eval_level_indices() noexcept {
    static const auto indices = [] {
        std::array<std::size_t, kNumEvalLevels> out{};
        for (std::size_t i = 0; i < kNumEvalLevels; ++i) out[i] = level_index(kQuantileLevels, kEvalLevels[i]);
        return out;
    }();
    return indices;
}

}  // namespace synthcast::data
