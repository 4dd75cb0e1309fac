#include "synthcast/model/quantiles.hpp"

#include <cmath>
#include <stdexcept>

namespace synthcast::model {

double softplus(double x) noexcept {
    return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

double sigmoid(double x) noexcept {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

std::vector<double> to_quantiles(std::span<const double> raw, std::size_t horizon, std::size_t n_quantiles) {
    if (raw.size() != horizon * n_quantiles) throw std::invalid_argument("to_quantiles: shape mismatch");
    std::vector<double> q(raw.size());
    for (std::size_t h = 0; h < horizon; ++h) {
        const std::size_t row = h * n_quantiles;
        double acc = raw[row];
        q[row] = acc;
        for (std::size_t k = 1; k < n_quantiles; ++k) {
            acc += softplus(raw[row + k]);
            q[row + k] = acc;
        }
    }
    return q;
}

void to_quantiles_backward(std::span<const double> raw, std::span<const double> d_quantiles, std::size_t horizon,
                           std::size_t n_quantiles, std::span<double> d_raw) {
    for (std::size_t h = 0; h < horizon; ++h) {
        const std::size_t row = h * n_quantiles;
        // Suffix sums: raw level j feeds every quantile k >= j.
        double suffix = 0.0;
        for (std::size_t k = n_quantiles; k-- > 1;) {
            suffix += d_quantiles[row + k];
            d_raw[row + k] = suffix * sigmoid(raw[row + k]);
        }
        d_raw[row] = suffix + d_quantiles[row];
    }
}

double pinball_loss(std::span<const double> predictions, std::span<const double> targets,
                    std::span<const double> levels) {
    const std::size_t q = levels.size();
    if (q == 0 || targets.empty() || predictions.size() != targets.size() * q)
        throw std::invalid_argument("pinball_loss: shape mismatch");
    double total = 0.0;
    for (std::size_t i = 0; i < targets.size(); ++i)
        for (std::size_t k = 0; k < q; ++k) total += pinball(levels[k], targets[i] - predictions[i * q + k]);
    return total / static_cast<double>(predictions.size());
}

}  // namespace synthcast::model
