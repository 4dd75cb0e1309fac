#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "synthcast/forecast/forecaster.hpp"
#include "synthcast/score/bootstrap.hpp"
#include "synthcast/score/metrics.hpp"

namespace synthcast::score {

/// location -> week -> observed value.
using Truth = std::map<std::string, std::map<std::int64_t, double>>;

/// CSV with columns location,week,value.
[[nodiscard]] Truth read_truth(std::istream& in);
void write_truth(std::ostream& out, const Truth& truth);

/// Scores forecasts of one model against the truth at week forecast_date + horizon.
/// Forecasts with no matching observation are skipped and counted in `unmatched`.
[[nodiscard]] std::vector<ForecastRecord> join_records(std::span<const forecast::QuantileForecast> forecasts,
                                                       const std::string& model, const Truth& truth,
                                                       std::size_t* unmatched = nullptr);

/// Per-model, per-horizon ("all" pools horizons) rows of
/// model,horizon,metric,value for mae, wis, coverage_XX, rmae, rwis and n.
void write_scores(std::ostream& out, std::span<const ForecastRecord> records, const ScoreConfig& cfg,
                  const std::string& baseline);

/// Replicate-level values: replicate,model,comparator,metric,value. Paired
/// differences carry the second model in `comparator`.
void write_bootstrap(std::ostream& out, const BootstrapResult& result);
/// Percentile intervals: model,comparator,metric,estimate,lower,upper.
void write_bootstrap_intervals(std::ostream& out, const BootstrapResult& result);

}  // namespace synthcast::score
