#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "synthcast/data/quantile_grid.hpp"

namespace synthcast::score {

struct ScoreConfig {
    std::vector<double> alphas{0.5, 0.2, 0.05};
    double median_weight = 0.5;

    /// Throws std::invalid_argument unless alphas are strictly decreasing in (0, 1)
    /// and each central interval has both ends on the evaluation grid.
    void validate() const;
    [[nodiscard]] double weight(std::size_t k) const { return alphas.at(k) / 2.0; }
    [[nodiscard]] double normalizer() const { return 1.0 / (static_cast<double>(alphas.size()) + 0.5); }
};

/// One scored forecast: the evaluation-level quantiles and the observation.
struct ForecastRecord {
    std::string location;
    std::int64_t date = 0;  // week index of the last observed value
    std::size_t horizon = 0;
    std::string model;
    double observed = 0.0;
    double point = 0.0;  // usually the median; the last observation for persistence
    std::array<double, data::kNumEvalLevels> quantiles{};

    [[nodiscard]] double median() const noexcept { return quantiles[3]; }
    /// Central (1 - alpha) interval bounds.
    [[nodiscard]] double lower(double alpha) const;
    [[nodiscard]] double upper(double alpha) const;
};

/// Throws std::invalid_argument on non-monotone quantiles or a negative or
/// non-finite observation.
void validate_record(const ForecastRecord& r);

/// |point - observed|.
[[nodiscard]] double absolute_error(const ForecastRecord& r) noexcept;
[[nodiscard]] double mae(std::span<const ForecastRecord> records);

/// metric / baseline; +inf when only the baseline is zero, 1 when both are.
[[nodiscard]] double relative(double metric, double baseline) noexcept;

[[nodiscard]] double interval_score(double y, double lower, double upper, double alpha);
[[nodiscard]] double wis(double y, double median, std::span<const double> lowers, std::span<const double> uppers,
                         const ScoreConfig& cfg);
[[nodiscard]] double wis(const ForecastRecord& r, const ScoreConfig& cfg);
[[nodiscard]] double mean_wis(std::span<const ForecastRecord> records, const ScoreConfig& cfg);

/// Share of records whose central (1 - alpha) interval contains the observation.
[[nodiscard]] double coverage(std::span<const ForecastRecord> records, double alpha);

/// Type-7 sample quantile.
[[nodiscard]] double empirical_quantile(std::span<const double> values, double p);

}  // namespace synthcast::score
