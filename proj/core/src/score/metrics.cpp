#include "synthcast/score/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "synthcast/stats.hpp"

namespace synthcast::score {

namespace {

std::size_t eval_index(double level) {
    for (std::size_t k = 0; k < data::kNumEvalLevels; ++k)
        if (std::abs(data::kEvalLevels[k] - level) < 1e-12) return k;
    throw std::invalid_argument("interval level " + std::to_string(level) + " is not an evaluation level");
}

}  // namespace

void ScoreConfig::validate() const {
    if (alphas.empty()) throw std::invalid_argument("ScoreConfig: need at least one interval");
    for (std::size_t k = 0; k < alphas.size(); ++k) {
        if (!(alphas[k] > 0.0 && alphas[k] < 1.0)) throw std::invalid_argument("ScoreConfig: alpha outside (0, 1)");
        if (k > 0 && !(alphas[k] < alphas[k - 1]))
            throw std::invalid_argument("ScoreConfig: alphas must be strictly decreasing");
        (void)eval_index(alphas[k] / 2.0);
        (void)eval_index(1.0 - alphas[k] / 2.0);
    }
    if (!(median_weight >= 0.0)) throw std::invalid_argument("ScoreConfig: negative median weight");
}

double ForecastRecord::lower(double alpha) const { return quantiles[eval_index(alpha / 2.0)]; }
double ForecastRecord::upper(double alpha) const { return quantiles[eval_index(1.0 - alpha / 2.0)]; }

void validate_record(const ForecastRecord& r) {
    if (!std::isfinite(r.observed) || r.observed < 0.0)
        throw std::invalid_argument("record " + r.location + "/" + r.model + ": observation must be finite and >= 0");
    for (std::size_t k = 0; k < r.quantiles.size(); ++k) {
        if (!std::isfinite(r.quantiles[k])) throw std::invalid_argument("record: non-finite quantile");
        if (k > 0 && r.quantiles[k] < r.quantiles[k - 1])
            throw std::invalid_argument("record " + r.location + "/" + r.model + ": quantiles not monotone");
    }
}

double absolute_error(const ForecastRecord& r) noexcept { return std::abs(r.point - r.observed); }

double mae(std::span<const ForecastRecord> records) {
    if (records.empty()) throw std::invalid_argument("mae: no records");
    double total = 0.0;
    for (const auto& r : records) total += absolute_error(r);
    return total / static_cast<double>(records.size());
}

double relative(double metric, double baseline) noexcept {
    if (baseline == 0.0) return metric == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
    return metric / baseline;
}

double interval_score(double y, double lower, double upper, double alpha) {
    if (lower > upper) throw std::invalid_argument("interval_score: lower bound exceeds upper bound");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("interval_score: alpha outside (0, 1)");
    double score = upper - lower;
    if (y < lower) score += 2.0 / alpha * (lower - y);
    if (y > upper) score += 2.0 / alpha * (y - upper);
    return score;
}

double wis(double y, double median, std::span<const double> lowers, std::span<const double> uppers,
           const ScoreConfig& cfg) {
    if (lowers.size() != cfg.alphas.size() || uppers.size() != cfg.alphas.size())
        throw std::invalid_argument("wis: one lower and upper bound per alpha required");
    double total = cfg.median_weight * std::abs(y - median);
    for (std::size_t k = 0; k < cfg.alphas.size(); ++k)
        total += cfg.weight(k) * interval_score(y, lowers[k], uppers[k], cfg.alphas[k]);
    return cfg.normalizer() * total;
}

double wis(const ForecastRecord& r, const ScoreConfig& cfg) {
    std::vector<double> lo, hi;
    for (double a : cfg.alphas) {
        lo.push_back(r.lower(a));
        hi.push_back(r.upper(a));
    }
    return wis(r.observed, r.median(), lo, hi, cfg);
}

double mean_wis(std::span<const ForecastRecord> records, const ScoreConfig& cfg) {
    if (records.empty()) throw std::invalid_argument("mean_wis: no records");
    double total = 0.0;
    for (const auto& r : records) total += wis(r, cfg);
    return total / static_cast<double>(records.size());
}

double coverage(std::span<const ForecastRecord> records, double alpha) {
    if (records.empty()) throw std::invalid_argument("coverage: no records");
    std::size_t inside = 0;
    for (const auto& r : records)
        if (r.lower(alpha) <= r.observed && r.observed <= r.upper(alpha)) ++inside;
    return static_cast<double>(inside) / static_cast<double>(records.size());
}

double empirical_quantile(std::span<const double> values, double p) { return quantile_type7_copy(values, p); }

}  // namespace synthcast::score
