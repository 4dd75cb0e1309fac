#include "synthcast/sim/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace synthcast::sim {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument("SimParams: " + what);
}

}  // namespace

void SimParams::validate() const {
    require(population_size >= 1, "population_size must be >= 1");
    require(std::isfinite(beta) && beta > 0.0, "beta must be > 0");
    require(std::isfinite(nu) && nu > 0.0, "nu must be > 0");
    require(initial_i_prop >= 0.0 && initial_i_prop <= 1.0, "initial_i_prop must lie in [0, 1]");
    require(deme_amplitude >= 0.0 && deme_amplitude <= 1.0, "deme_amplitude must lie in [0, 1]");
    require(lambda_antigenic >= 0.0, "lambda_antigenic must be >= 0");
    require(mean_antigenic_size > 0.0, "mean_antigenic_size must be > 0");
    require(lambda_deleterious >= 0.0, "lambda_deleterious must be >= 0");
    require(mut_cost >= 0.0 && mut_cost < 1.0, "mut_cost must lie in [0, 1)");
    require(epsilon_mut >= 0.0, "epsilon_mut must be >= 0");
    require(fixed.end_day >= 1, "end_day must be >= 1");
    require(fixed.print_step >= 1, "print_step must be >= 1");
    require(fixed.birth_rate >= 0.0 && fixed.birth_rate <= 1.0, "birth_rate must lie in [0, 1]");
    require(fixed.death_rate >= 0.0 && fixed.death_rate <= 1.0, "death_rate must lie in [0, 1]");
    require(fixed.antigenic_gamma_shape > 0.0, "antigenic_gamma_shape must be > 0");
    require(fixed.homologous_immunity >= 0.0 && fixed.homologous_immunity <= 1.0,
            "homologous_immunity must lie in [0, 1]");
    require(fixed.initial_prior_immune >= 0.0 && fixed.initial_prior_immune <= 1.0,
            "initial_prior_immune must lie in [0, 1]");
    require(fixed.external_migration >= 0.0, "external_migration must be >= 0");
}

const std::array<ParamBound, kSampledDims>& default_bounds() noexcept {
    static const std::array<ParamBound, kSampledDims> bounds{{
        {"population_size", 1.0e4, 1.0e4},
        {"deme_amplitude", 0.0, 2.0e-1},
        {"lambda_antigenic", 8.57e-5, 2.57e-3},
        {"mean_antigenic_size", 1.2e-3, 1.2e-1},
        {"lambda_deleterious", 9.5e-3, 4.08},
        {"mut_cost", 8.0e-4, 8.0e-2},
        {"beta", 1.43e-1, 2.25},
        {"nu", 7.14e-2, 2.5e-1},
        {"epsilon_mut", 5.0e-1, 1.5},
        {"initial_i_prop", 1.0e-4, 1.0e-3},
    }};
    return bounds;
}

SimParams params_from_row(std::span<const double> row, const SimConstants& fixed) {
    if (row.size() != kSampledDims)
        throw std::invalid_argument("design row must have " + std::to_string(kSampledDims) +
                                    " columns");
    SimParams p;
    p.population_size = static_cast<std::int64_t>(std::llround(row[0]));
    p.deme_amplitude = row[1];
    p.lambda_antigenic = row[2];
    p.mean_antigenic_size = row[3];
    p.lambda_deleterious = row[4];
    p.mut_cost = row[5];
    p.beta = row[6];
    p.nu = row[7];
    p.epsilon_mut = row[8];
    p.initial_i_prop = row[9];
    p.fixed = fixed;
    return p;
}

std::array<double, kSampledDims> params_to_row(const SimParams& p) noexcept {
    return {static_cast<double>(p.population_size), p.deme_amplitude, p.lambda_antigenic,
            p.mean_antigenic_size, p.lambda_deleterious, p.mut_cost,
            p.beta, p.nu, p.epsilon_mut, p.initial_i_prop};
}

}  // namespace synthcast::sim
