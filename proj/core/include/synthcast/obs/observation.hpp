#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "synthcast/rng.hpp"
#include "synthcast/series.hpp"

namespace synthcast::obs {

struct Range {
    double lower;
    double upper;
};

struct ObsConfig {
    std::size_t t_prime_min = 52;
    Range kappa{1.5, 3.5};
    std::size_t outlier_count_min = 5;
    std::size_t outlier_count_max = 10;
    Range high_multiplier{2.0, 10.0};
    Range low_multiplier{0.0, 0.05};
    double outlier_probability = 0.25;
    std::size_t tc_realizations = 20;
    std::size_t tc_noised = 10;
    std::size_t vac_max_variants = 10;

    /// Throws std::invalid_argument on an inverted range, a probability
    /// outside [0,1], or tc_noised > tc_realizations.
    void validate() const;
};

/// Linear interpolation of `values` onto `t_prime` equally spaced abscissae
/// spanning the original index range; endpoints are preserved.
[[nodiscard]] std::vector<double> interpolate_to_length(std::span<const double> values,
                                                        std::size_t t_prime);

/// Draws T' uniformly from {t_prime_min, ..., T} and rescales the time axis.
/// Throws std::invalid_argument when the series is shorter than t_prime_min.
[[nodiscard]] SurveillanceSeries scale(const SurveillanceSeries& y, Engine& rng,
                                       const ObsConfig& cfg = {});

/// Multiplicative noise with a per-series spread kappa ~ U(kappa range) and
/// per-step factors U(1/kappa, kappa).
[[nodiscard]] SurveillanceSeries add_noise(const SurveillanceSeries& x, Engine& rng,
                                           const ObsConfig& cfg = {});
/// Same as add_noise with kappa fixed by the caller.
[[nodiscard]] SurveillanceSeries add_noise_with_kappa(const SurveillanceSeries& x, double kappa,
                                                      Engine& rng);

struct OutlierDraw {
    SurveillanceSeries series;
    std::vector<std::size_t> positions;   // distinct, in draw order
    std::vector<double> multipliers;      // parallel to positions
    std::size_t high_count = 0;           // first high_count positions are high outliers
};

/// Marks 5..10 distinct steps as outliers: ceil(n/2) high, the rest low.
/// Series shorter than outlier_count_max pass through unchanged.
[[nodiscard]] OutlierDraw add_outliers_detailed(const SurveillanceSeries& v, Engine& rng,
                                                const ObsConfig& cfg = {});
[[nodiscard]] SurveillanceSeries add_outliers(const SurveillanceSeries& v, Engine& rng,
                                              const ObsConfig& cfg = {});

/// tc_realizations degraded copies of a clean total-cases series: all are
/// rescaled in time, the first tc_noised are noised, and each independently
/// receives outliers with outlier_probability. Returns an empty vector (and
/// logs) for series shorter than t_prime_min.
[[nodiscard]] std::vector<SurveillanceSeries> realize_tc(const SurveillanceSeries& y, Engine& rng,
                                                         const ObsConfig& cfg = {});

/// Selects up to vac_max_variants eligible variant series (probability
/// proportional to their total cases, without replacement) and produces two
/// realizations for each: scale then outliers, and scale, noise, then
/// outliers. Outliers are applied with outlier_probability as for totals.
[[nodiscard]] std::vector<SurveillanceSeries> realize_vac(std::span<const SurveillanceSeries> vacs,
                                                          Engine& rng, const ObsConfig& cfg = {});

}  // namespace synthcast::obs
