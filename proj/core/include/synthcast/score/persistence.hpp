#pragma once

#include <cstddef>
#include <span>

#include "synthcast/forecast/forecaster.hpp"

namespace synthcast::score {

inline constexpr std::size_t kMinPersistenceLookback = 12;

struct PersistenceForecast {
    forecast::QuantileForecast forecast;
    std::size_t n_changes = 0;
    /// Fewer than the minimum number of h-step changes were available; the
    /// quantiles use whatever history exists.
    bool fallback = false;
};

/// Point forecast is the last observation; quantiles are the last observation
/// plus empirical quantiles of every past h-step change in
/// `history` (an expanding window ending at the forecast date), clamped at zero.
[[nodiscard]] PersistenceForecast persistence_forecast(std::span<const double> history, std::size_t horizon,
                                                       std::size_t min_lookback = kMinPersistenceLookback);

}  // namespace synthcast::score
