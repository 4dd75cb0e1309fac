#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "synthcast/forecast/forecaster.hpp"

namespace synthcast::forecast {

/// "h wk ahead cases"
[[nodiscard]] std::string target_label(std::size_t horizon);
/// Inverse of target_label; throws std::invalid_argument on other text.
[[nodiscard]] std::size_t parse_target_label(const std::string& label);

/// Hub-style CSV: location,forecast_date,target,quantile_level,value. Each
/// forecast also gets a point row (quantile_level "NA"), the median unless an
/// explicit point forecast is set.
void write_forecasts(std::ostream& out, std::span<const QuantileForecast> forecasts);

/// Reads quantile rows back, grouping by (location, date, horizon) in file
/// order; a point row that differs from the median becomes `point`.
[[nodiscard]] std::vector<QuantileForecast> read_forecasts(std::istream& in);

}  // namespace synthcast::forecast
