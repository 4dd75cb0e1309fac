#include "synthcast/forecast/forecaster.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "synthcast/data/quantile_grid.hpp"
#include "synthcast/data/windows.hpp"
#include "synthcast/parallel.hpp"
#include "synthcast/rng.hpp"
#include "synthcast/stats.hpp"

namespace synthcast::forecast {

namespace {

void require_monotone(std::span<const double> values) {
    for (std::size_t k = 1; k < values.size(); ++k)
        if (!(values[k] >= values[k - 1]))
            throw std::invalid_argument("quantile values are not monotone at index " + std::to_string(k));
}

double interpolate(std::span<const double> levels, std::span<const double> values, double u) {
    if (u <= levels.front()) return values.front();
    if (u >= levels.back()) return values.back();
    const auto it = std::upper_bound(levels.begin(), levels.end(), u);
    const auto k = static_cast<std::size_t>(it - levels.begin());
    const double w = (u - levels[k - 1]) / (levels[k] - levels[k - 1]);
    return values[k - 1] + w * (values[k] - values[k - 1]);
}

std::vector<QuantileForecast> eval_forecasts(std::span<const double> full, std::size_t horizon,
                                             std::size_t n_levels, const std::string& location,
                                             const std::string& date) {
    const auto& idx = data::eval_level_indices();
    std::vector<QuantileForecast> out;
    for (std::size_t h = 0; h < horizon; ++h) {
        QuantileForecast f{location, date, h + 1, {data::kEvalLevels.begin(), data::kEvalLevels.end()}, {}};
        for (std::size_t i : idx) f.values.push_back(full[h * n_levels + i]);
        out.push_back(std::move(f));
    }
    return out;
}

}  // namespace

double QuantileForecast::at(double level) const {
    for (std::size_t k = 0; k < levels.size(); ++k)
        if (levels[k] == level) return values[k];
    throw std::out_of_range("QuantileForecast: level not present");
}

double invert_cdf(std::span<const double> levels, std::span<const double> values, double u) {
    if (levels.empty() || levels.size() != values.size())
        throw std::invalid_argument("invert_cdf: levels and values must be non-empty and equal length");
    if (!(u > 0.0 && u < 1.0)) throw std::invalid_argument("invert_cdf: u must lie in (0, 1)");
    require_monotone(values);
    return interpolate(levels, values, u);
}

std::vector<double> sum_quantiles(std::span<const double> levels, std::span<const std::vector<double>> per_component,
                                  std::span<const double> report_levels, std::size_t n_draws, std::uint64_t seed,
                                  std::uint64_t stream_index, unsigned workers) {
    if (per_component.empty()) throw std::invalid_argument("sum_quantiles: no components");
    if (n_draws == 0) throw std::invalid_argument("sum_quantiles: n_draws must be >= 1");
    for (const auto& v : per_component) {
        if (v.size() != levels.size()) throw std::invalid_argument("sum_quantiles: component size mismatch");
        require_monotone(v);
    }
    std::vector<double> draws(n_draws, 0.0);
    const std::size_t chunks = (n_draws + kDrawChunk - 1) / kDrawChunk;
    parallel_for(chunks, workers, [&](std::size_t c) {
        Engine rng = make_engine(seed, "forecast.vac", stream_index, c);
        const std::size_t begin = c * kDrawChunk;
        const std::size_t m = std::min(n_draws, begin + kDrawChunk) - begin;
        // Latin hypercube within the chunk: each component gets one uniform
        // per stratum, paired across components by independent permutations.
        std::vector<std::size_t> strata(m);
        for (const auto& v : per_component) {
            std::iota(strata.begin(), strata.end(), std::size_t{0});
            std::shuffle(strata.begin(), strata.end(), rng);
            for (std::size_t j = 0; j < m; ++j) {
                double u;
                do u = (static_cast<double>(strata[j]) + uniform(rng)) / static_cast<double>(m);
                while (u <= 0.0 || u >= 1.0);
                draws[begin + j] += interpolate(levels, v, u);
            }
        }
    });
    std::vector<double> out;
    out.reserve(report_levels.size());
    for (double p : report_levels) out.push_back(quantile_type7(draws, p));
    // Guard against floating-point inversions between adjacent levels.
    for (std::size_t k = 1; k < out.size(); ++k) out[k] = std::max(out[k], out[k - 1]);
    return out;
}

Forecaster::Forecaster(model::Checkpoint ckpt)
    : ckpt_(std::move(ckpt)), model_(ckpt_.config), levels_(data::kQuantileLevels.begin(), data::kQuantileLevels.end()) {
    if (ckpt_.config.n_quantiles != levels_.size())
        throw std::invalid_argument("Forecaster: checkpoint quantile count does not match the grid");
    if (ckpt_.params.size() != model_.parameter_count())
        throw std::invalid_argument("Forecaster: checkpoint parameter count does not match its config");
}

std::vector<double> Forecaster::full_quantiles(std::span<const double> y_in) const {
    if (y_in.size() != ckpt_.config.context)
        throw std::invalid_argument("forecast: context length " + std::to_string(y_in.size()) + ", expected " +
                                    std::to_string(ckpt_.config.context));
    for (double v : y_in) {
        if (!std::isfinite(v)) throw std::invalid_argument("forecast: non-finite input");
        if (v < 0.0) throw std::invalid_argument("forecast: negative input");
    }
    const auto ex = data::make_window({y_in.begin(), y_in.end()}, {});
    auto q = model_.predict_quantiles(ckpt_.params, ex.z_input);
    for (double& v : q) v = std::max(0.0, v * ex.norm);
    return q;
}

std::vector<QuantileForecast> Forecaster::forecast_tc(std::span<const double> y_in, const std::string& location,
                                                      const std::string& forecast_date) const {
    const auto q = full_quantiles(y_in);
    return eval_forecasts(q, ckpt_.config.horizon, levels_.size(), location, forecast_date);
}

std::vector<QuantileForecast> Forecaster::forecast_vac(std::span<const std::vector<double>> vacs, std::size_t n_draws,
                                                       std::uint64_t seed, const std::string& location,
                                                       const std::string& forecast_date, unsigned workers) const {
    if (vacs.empty()) throw std::invalid_argument("forecast_vac: need at least one variant context");
    const std::size_t H = ckpt_.config.horizon;
    const std::size_t Q = levels_.size();
    std::vector<std::vector<double>> full;
    full.reserve(vacs.size());
    for (const auto& v : vacs) full.push_back(full_quantiles(v));

    std::vector<QuantileForecast> out;
    std::vector<std::vector<double>> components(vacs.size());
    for (std::size_t h = 0; h < H; ++h) {
        for (std::size_t i = 0; i < vacs.size(); ++i)
            components[i].assign(full[i].begin() + static_cast<std::ptrdiff_t>(h * Q),
                                 full[i].begin() + static_cast<std::ptrdiff_t>((h + 1) * Q));
        QuantileForecast f{location, forecast_date, h + 1, {data::kEvalLevels.begin(), data::kEvalLevels.end()}, {}};
        f.values = sum_quantiles(levels_, components, f.levels, n_draws, seed, h, workers);
        out.push_back(std::move(f));
    }
    return out;
}

}  // namespace synthcast::forecast
