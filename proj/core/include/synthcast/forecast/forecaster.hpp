#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "synthcast/model/checkpoint.hpp"
#include "synthcast/model/transformer.hpp"

namespace synthcast::forecast {

inline constexpr std::size_t kDefaultDraws = 100'000;
inline constexpr std::size_t kDrawChunk = 8192;

/// Quantiles for one (location, forecast date, horizon), in case units.
struct QuantileForecast {
    std::string location;
    std::string forecast_date;
    std::size_t horizon = 0;  // 1-based
    std::vector<double> levels;
    std::vector<double> values;
    /// Point forecast when it differs from the median; NaN means "use the median".
    double point = std::numeric_limits<double>::quiet_NaN();

    [[nodiscard]] double point_value() const { return std::isnan(point) ? at(0.5) : point; }
    /// Value at `level`; throws std::out_of_range when absent.
    [[nodiscard]] double at(double level) const;
};

/// Inverse CDF of a piecewise-linear quantile function. `u` outside the grid
/// clamps to the extreme values. Throws on non-monotone values or u not in (0, 1).
[[nodiscard]] double invert_cdf(std::span<const double> levels, std::span<const double> values, double u);

class Forecaster {
public:
    explicit Forecaster(model::Checkpoint ckpt);

    [[nodiscard]] const model::ModelConfig& config() const noexcept { return ckpt_.config; }
    [[nodiscard]] std::span<const double> levels() const noexcept { return levels_; }

    /// All training-grid quantiles in case units (horizon x levels, row-major),
    /// clamped at zero.
    [[nodiscard]] std::vector<double> full_quantiles(std::span<const double> y_in) const;

    /// Total-cases pathway: one forecast per horizon at the evaluation levels.
    [[nodiscard]] std::vector<QuantileForecast> forecast_tc(std::span<const double> y_in,
                                                            const std::string& location = {},
                                                            const std::string& forecast_date = {}) const;

    /// Variant pathway: per-variant quantiles, independent inverse-CDF draws
    /// summed across variants, evaluation-level sample quantiles of the sums.
    /// Draws are generated in fixed-size chunks with their own substreams, so
    /// results depend only on (seed, n_draws), never on `workers`. Within a
    /// chunk each variant's uniforms are stratified (Latin hypercube) and
    /// paired across variants by independent random permutations.
    [[nodiscard]] std::vector<QuantileForecast> forecast_vac(std::span<const std::vector<double>> vacs,
                                                             std::size_t n_draws, std::uint64_t seed,
                                                             const std::string& location = {},
                                                             const std::string& forecast_date = {},
                                                             unsigned workers = 1) const;

private:
    model::Checkpoint ckpt_;
    model::QuantileTransformer model_;
    std::vector<double> levels_;
};

/// Monte Carlo sum of independent draws from piecewise-linear quantile
/// functions; `per_component` holds one monotone value vector per summand.
/// Returns the requested sample quantiles.
[[nodiscard]] std::vector<double> sum_quantiles(std::span<const double> levels,
                                                std::span<const std::vector<double>> per_component,
                                                std::span<const double> report_levels, std::size_t n_draws,
                                                std::uint64_t seed, std::uint64_t stream_index = 0,
                                                unsigned workers = 1);

}  // namespace synthcast::forecast
