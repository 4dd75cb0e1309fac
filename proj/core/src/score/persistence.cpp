#include "synthcast/score/persistence.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "synthcast/data/quantile_grid.hpp"
#include "synthcast/stats.hpp"

namespace synthcast::score {

PersistenceForecast persistence_forecast(std::span<const double> history, std::size_t horizon,
                                         std::size_t min_lookback) {
    if (history.empty()) throw std::invalid_argument("persistence_forecast: empty history");
    if (horizon == 0) throw std::invalid_argument("persistence_forecast: horizon must be >= 1");
    const double last = history.back();

    std::vector<double> changes;
    for (std::size_t s = horizon; s < history.size(); ++s) changes.push_back(history[s] - history[s - horizon]);

    PersistenceForecast out;
    out.n_changes = changes.size();
    out.fallback = changes.size() < min_lookback;
    out.forecast.horizon = horizon;
    out.forecast.point = last;
    out.forecast.levels.assign(data::kEvalLevels.begin(), data::kEvalLevels.end());
    for (double tau : data::kEvalLevels) {
        const double shift = changes.empty() ? 0.0 : quantile_type7(changes, tau);
        out.forecast.values.push_back(std::max(0.0, last + shift));
    }
    return out;
}

}  // namespace synthcast::score
