#pragma once

#include <span>

namespace synthcast {

/// Sample quantile with linear interpolation between order statistics
/// (Hyndman-Fan type 7). Reorders `values`; throws on empty input or p outside [0, 1].
[[nodiscard]] double quantile_type7(std::span<double> values, double p);

/// Non-mutating variant.
[[nodiscard]] double quantile_type7_copy(std::span<const double> values, double p);

}  // namespace synthcast
