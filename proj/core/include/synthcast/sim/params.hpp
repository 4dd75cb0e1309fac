#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

namespace synthcast::sim {

/// Constants held fixed across every run of the sweep.
struct SimConstants {
    double birth_rate = 0.000091;   // per host per day
    double death_rate = 0.000091;   // per host per day
    int print_step = 7;             // days per reported interval
    int end_day = 3650;
    double antigenic_gamma_shape = 2.0;
    double threshold_antigenic_size = 0.012;
    double smith_conversion = 0.1;
    double homologous_immunity = 0.95;
    double deme_baseline = 1.0;
    double deme_offset = 0.0;
    bool swap_demography = true;
    double epsilon = 0.16;
    double initial_prior_immune = 0.5088;  // initialPrR
    /// External force of infection, in infected-host equivalents per 1e7 hosts.
    double external_migration = 200.0;
};

/// One point of the sampled parameter space plus the fixed constants.
struct SimParams {
    std::int64_t population_size = 10'000;
    double deme_amplitude = 0.1;
    double lambda_antigenic = 1e-3;
    double mean_antigenic_size = 0.05;
    double lambda_deleterious = 0.1;
    double mut_cost = 0.01;
    double beta = 0.6;
    double nu = 0.2;
    double epsilon_mut = 1.0;
    double initial_i_prop = 5e-4;
    SimConstants fixed{};

    /// Throws std::invalid_argument describing the first violated constraint.
    void validate() const;
};

inline constexpr std::size_t kSampledDims = 10;

struct ParamBound {
    std::string_view name;
    double lower;
    double upper;
};

/// Sampling ranges of the ten varied parameters, in design-column order.
[[nodiscard]] const std::array<ParamBound, kSampledDims>& default_bounds() noexcept;

/// Maps a design row (in default_bounds() column order) onto SimParams.
[[nodiscard]] SimParams params_from_row(std::span<const double> row,
                                        const SimConstants& fixed = {});
[[nodiscard]] std::array<double, kSampledDims> params_to_row(const SimParams& p) noexcept;

}  // namespace synthcast::sim
