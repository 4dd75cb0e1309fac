#pragma once

#include <array>
#include <cstddef>
#include <span>

namespace synthcast::data {

inline constexpr std::size_t kNumLevels = 27;
inline constexpr std::size_t kNumEvalLevels = 7;

/// Dense training grid: tails at 0.0005/0.005/0.01/0.025, a 0.05-step
/// interior, and the mirrored upper tail.
inline constexpr std::array<double, kNumLevels> kQuantileLevels{
    0.0005, 0.005, 0.01, 0.025, 0.05, 0.1,  0.15, 0.2,   0.25, 0.3,  0.35,   0.4, 0.45, 0.5,
    0.55,   0.6,   0.65, 0.7,   0.75, 0.8,  0.85, 0.9,   0.95, 0.975, 0.99,  0.995, 0.9995};

/// Levels reported and scored: the median plus 50/80/95% central intervals.
inline constexpr std::array<double, kNumEvalLevels> kEvalLevels{0.025, 0.1, 0.25, 0.5, 0.75, 0.9, 0.975};

/// Position of each evaluation level within kQuantileLevels.
[[nodiscard]] const std::array<std::size_t, kNumEvalLevels>& eval_level_indices() noexcept;

/// Index of `level` in `levels`; throws std::out_of_range if absent.
[[nodiscard]] std::size_t level_index(std::span<const double> levels, double level);

}  // namespace synthcast::data
