#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace synthcast::model {

[[nodiscard]] double softplus(double x) noexcept;
[[nodiscard]] double sigmoid(double x) noexcept;

/// Monotone quantiles from unconstrained outputs, per horizon row: the first
/// level is the raw value, each later level adds softplus of its raw value.
/// `raw` is row-major horizon x n_quantiles.
[[nodiscard]] std::vector<double> to_quantiles(std::span<const double> raw, std::size_t horizon,
                                               std::size_t n_quantiles);

/// Backpropagates d(loss)/d(quantile) through to_quantiles.
void to_quantiles_backward(std::span<const double> raw, std::span<const double> d_quantiles,
                           std::size_t horizon, std::size_t n_quantiles, std::span<double> d_raw);

/// rho_tau(residual) with residual = observed - predicted.
[[nodiscard]] inline double pinball(double tau, double residual) noexcept {
    return residual >= 0.0 ? tau * residual : (tau - 1.0) * residual;
}

/// Mean pinball loss over examples, horizons and levels. `predictions` is
/// examples x horizon x levels (row-major), `targets` is examples x horizon.
[[nodiscard]] double pinball_loss(std::span<const double> predictions, std::span<const double> targets,
                                  std::span<const double> levels);

}  // namespace synthcast::model
