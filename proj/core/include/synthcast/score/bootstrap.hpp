#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "synthcast/score/metrics.hpp"

namespace synthcast::score {

enum class BootstrapMode { block, iid };

[[nodiscard]] std::string to_string(BootstrapMode mode);
[[nodiscard]] BootstrapMode parse_bootstrap_mode(const std::string& text);

struct BootstrapConfig {
    std::size_t n_reps = 5000;
    BootstrapMode mode = BootstrapMode::block;
    std::size_t block_length = 15;
    /// Blocks per sampled location; 0 means ceil(dates / block_length).
    std::size_t n_blocks = 0;
    std::string baseline = "persistence";
    ScoreConfig score{};
    unsigned workers = 1;

    void validate() const;
};

/// Percentile interval of one bootstrap distribution.
struct Interval {
    double estimate = 0.0;  // on the original records
    double lower = 0.0;     // 2.5th percentile
    double upper = 0.0;     // 97.5th percentile
};

struct BootstrapResult {
    std::vector<std::string> models;
    std::vector<std::string> metrics;  // mae, wis, rmae, rwis
    /// (model, metric) -> one value per replicate.
    std::map<std::pair<std::string, std::string>, std::vector<double>> replicates;
    /// (model A, model B, metric) -> A - B per replicate for A before B in
    /// model order; positive favours B.
    std::map<std::tuple<std::string, std::string, std::string>, std::vector<double>> paired;
    std::map<std::pair<std::string, std::string>, Interval> intervals;
    std::map<std::tuple<std::string, std::string, std::string>, Interval> paired_intervals;
    std::size_t block_length = 0;
    std::size_t n_blocks = 0;
    std::size_t records_per_model = 0;  // per replicate
};

/// Resamples whole (location, forecast date) units, keeping every horizon
/// and model together. Block mode draws locations with replacement and, for
/// each, n_blocks runs of block_length consecutive dates; iid mode draws the
/// same number of units independently. Metrics relative to the baseline use
/// the baseline's score on the same resample.
[[nodiscard]] BootstrapResult bootstrap(std::span<const ForecastRecord> records, const BootstrapConfig& cfg,
                                        std::uint64_t seed);

[[nodiscard]] BootstrapResult block_bootstrap(std::span<const ForecastRecord> records, BootstrapConfig cfg,
                                              std::uint64_t seed);
[[nodiscard]] BootstrapResult iid_bootstrap(std::span<const ForecastRecord> records, BootstrapConfig cfg,
                                            std::uint64_t seed);

[[nodiscard]] Interval percentile_interval(std::span<const double> values, double estimate);

}  // namespace synthcast::score
