#include "synthcast/obs/observation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include <spdlog/spdlog.h>

namespace synthcast::obs {

void ObsConfig::validate() const {
    auto check_range = [](const Range& r, const char* name) {
        if (!(r.lower <= r.upper)) throw std::invalid_argument(std::string("ObsConfig: ") + name + " has lower > upper");
    };
    check_range(kappa, "kappa");
    check_range(high_multiplier, "high_multiplier");
    check_range(low_multiplier, "low_multiplier");
    if (kappa.lower <= 0.0) throw std::invalid_argument("ObsConfig: kappa must be positive");
    if (outlier_count_min > outlier_count_max)
        throw std::invalid_argument("ObsConfig: outlier_count_min > outlier_count_max");
    if (!(outlier_probability >= 0.0 && outlier_probability <= 1.0))
        throw std::invalid_argument("ObsConfig: outlier_probability must lie in [0, 1]");
    if (tc_noised > tc_realizations) throw std::invalid_argument("ObsConfig: tc_noised > tc_realizations");
    if (t_prime_min < 2) throw std::invalid_argument("ObsConfig: t_prime_min must be >= 2");
}

std::vector<double> interpolate_to_length(std::span<const double> values, std::size_t t_prime) {
    const std::size_t t = values.size();
    if (t == 0 || t_prime == 0) throw std::invalid_argument("interpolate_to_length: empty input or output");
    std::vector<double> out(t_prime);
    if (t_prime == 1) {
        out[0] = values[0];
        return out;
    }
    const double span = static_cast<double>(t - 1);
    for (std::size_t j = 0; j < t_prime; ++j) {
        const double pos = span * static_cast<double>(j) / static_cast<double>(t_prime - 1);
        const auto lo = std::min(static_cast<std::size_t>(pos), t - 1);
        const std::size_t hi = std::min(lo + 1, t - 1);
        const double frac = pos - static_cast<double>(lo);
        out[j] = frac == 0.0 ? values[lo] : values[lo] + frac * (values[hi] - values[lo]);
    }
    out.back() = values.back();
    return out;
}

SurveillanceSeries scale(const SurveillanceSeries& y, Engine& rng, const ObsConfig& cfg) {
    const std::size_t t = y.values.size();
    if (t < cfg.t_prime_min)
        throw std::invalid_argument("scale: series '" + y.id + "' has " + std::to_string(t) +
                                    " steps, fewer than " + std::to_string(cfg.t_prime_min));
    const auto t_prime = uniform_int<std::size_t>(rng, cfg.t_prime_min, t);
    SurveillanceSeries x = y;
    x.values = interpolate_to_length(y.values, t_prime);
    return x;
}

SurveillanceSeries add_noise_with_kappa(const SurveillanceSeries& x, double kappa, Engine& rng) {
    if (!(kappa >= 1.0)) throw std::invalid_argument("add_noise: kappa must be >= 1");
    SurveillanceSeries v = x;
    std::uniform_real_distribution<double> eps(1.0 / kappa, kappa);
    for (double& value : v.values) value *= eps(rng);
    v.noised = true;
    return v;
}

SurveillanceSeries add_noise(const SurveillanceSeries& x, Engine& rng, const ObsConfig& cfg) {
    const double kappa = uniform(rng, cfg.kappa.lower, cfg.kappa.upper);
    return add_noise_with_kappa(x, kappa, rng);
}

OutlierDraw add_outliers_detailed(const SurveillanceSeries& v, Engine& rng, const ObsConfig& cfg) {
    OutlierDraw draw{v, {}, {}, 0};
    const std::size_t t = v.values.size();
    if (t < cfg.outlier_count_max) {
        spdlog::debug("add_outliers: series '{}' has {} steps, skipping outlier stage", v.id, t);
        return draw;
    }
    const auto count = uniform_int<std::size_t>(rng, cfg.outlier_count_min, cfg.outlier_count_max);
    // Partial Fisher-Yates: the first `count` entries are a uniform draw without replacement.
    std::vector<std::size_t> order(t);
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t k = 0; k < count; ++k) std::swap(order[k], order[uniform_int<std::size_t>(rng, k, t - 1)]);

    draw.high_count = (count + 1) / 2;
    for (std::size_t k = 0; k < count; ++k) {
        const bool high = k < draw.high_count;
        const Range& r = high ? cfg.high_multiplier : cfg.low_multiplier;
        const double lambda = uniform(rng, r.lower, r.upper);
        draw.positions.push_back(order[k]);
        draw.multipliers.push_back(lambda);
        draw.series.values[order[k]] *= lambda;
    }
    draw.series.outliered = true;
    return draw;
}

SurveillanceSeries add_outliers(const SurveillanceSeries& v, Engine& rng, const ObsConfig& cfg) {
    return add_outliers_detailed(v, rng, cfg).series;
}

namespace {

SurveillanceSeries maybe_outliers(SurveillanceSeries s, Engine& rng, const ObsConfig& cfg) {
    if (uniform(rng) < cfg.outlier_probability) return add_outliers(s, rng, cfg);
    return s;
}

}  // namespace

std::vector<SurveillanceSeries> realize_tc(const SurveillanceSeries& y, Engine& rng, const ObsConfig& cfg) {
    cfg.validate();
    if (y.values.size() < cfg.t_prime_min) {
        spdlog::warn("realize_tc: skipping '{}' ({} weeks < {})", y.id, y.values.size(), cfg.t_prime_min);
        return {};
    }
    std::vector<SurveillanceSeries> out;
    out.reserve(cfg.tc_realizations);
    for (std::size_t r = 0; r < cfg.tc_realizations; ++r) {
        SurveillanceSeries s = scale(y, rng, cfg);
        if (r < cfg.tc_noised) s = add_noise(s, rng, cfg);
        s = maybe_outliers(std::move(s), rng, cfg);
        s.realization = static_cast<std::int64_t>(r);
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<SurveillanceSeries> realize_vac(std::span<const SurveillanceSeries> vacs, Engine& rng,
                                            const ObsConfig& cfg) {
    cfg.validate();
    std::vector<std::size_t> eligible;
    for (std::size_t i = 0; i < vacs.size(); ++i) {
        if (vacs[i].values.size() >= cfg.t_prime_min)
            eligible.push_back(i);
        else
            spdlog::debug("realize_vac: skipping '{}' ({} weeks < {})", vacs[i].id, vacs[i].values.size(),
                          cfg.t_prime_min);
    }

    // Weighted sampling without replacement; falls back to uniform once only
    // zero-weight variants remain.
    std::vector<std::size_t> chosen;
    while (chosen.size() < cfg.vac_max_variants && !eligible.empty()) {
        double total = 0.0;
        for (auto i : eligible) total += vacs[i].total();
        std::size_t pick = 0;
        if (total > 0.0) {
            double u = uniform(rng, 0.0, total);
            pick = eligible.size() - 1;
            for (std::size_t k = 0; k < eligible.size(); ++k) {
                const double w = vacs[eligible[k]].total();
                if (w > 0.0 && u < w) {
                    pick = k;
                    break;
                }
                u -= w;
            }
            while (vacs[eligible[pick]].total() <= 0.0) --pick;
        } else {
            pick = uniform_int<std::size_t>(rng, 0, eligible.size() - 1);
        }
        chosen.push_back(eligible[pick]);
        eligible.erase(eligible.begin() + static_cast<std::ptrdiff_t>(pick));
    }

    std::vector<SurveillanceSeries> out;
    out.reserve(2 * chosen.size());
    std::int64_t realization = 0;
    for (auto i : chosen) {
        SurveillanceSeries plain = maybe_outliers(scale(vacs[i], rng, cfg), rng, cfg);
        plain.realization = realization++;
        out.push_back(std::move(plain));

        SurveillanceSeries noisy = maybe_outliers(add_noise(scale(vacs[i], rng, cfg), rng, cfg), rng, cfg);
        noisy.realization = realization++;
        out.push_back(std::move(noisy));
    }
    return out;
}

}  // namespace synthcast::obs
