#pragma once

#include <cstddef>

#include "synthcast/sim/simulator.hpp"

namespace synthcast::sim {

inline constexpr std::size_t kDefaultMinDominanceWeeks = 8;

/// True when at least two distinct antigenic types each hold the weekly
/// plurality of attributable cases for `min_weeks` consecutive weeks.
/// Weeks without cases break a run. Ties go to the lower type id.
[[nodiscard]] bool classify_turnover(const SimOutput& out,
                                     std::size_t min_weeks = kDefaultMinDominanceWeeks);

}  // namespace synthcast::sim
