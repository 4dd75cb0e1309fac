#include "synthcast/model/config.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace synthcast::model {

ModelConfig ModelConfig::desk() noexcept {
    ModelConfig cfg;
    cfg.d_model = 32;
    cfg.d_ff = 64;
    return cfg;
}

void ModelConfig::validate() const {
    if (d_model == 0 || n_layers == 0 || n_heads == 0 || d_ff == 0 || context == 0 || horizon == 0 ||
        n_quantiles == 0)
        throw std::invalid_argument("ModelConfig: every dimension must be >= 1");
    if (d_model % n_heads != 0) throw std::invalid_argument("ModelConfig: d_model must be divisible by n_heads");
}

void TrainConfig::validate() const {
    if (updates == 0) throw std::invalid_argument("TrainConfig: updates must be >= 1");
    if (!(lr_end > 0.0 && lr_end <= lr_start)) throw std::invalid_argument("TrainConfig: need 0 < lr_end <= lr_start");
    if (!(ema_alpha >= 0.0 && ema_alpha < 1.0)) throw std::invalid_argument("TrainConfig: ema_alpha must lie in [0, 1)");
    if (batch_size == 0) throw std::invalid_argument("TrainConfig: batch_size must be >= 1");
    if (validation_every == 0) throw std::invalid_argument("TrainConfig: validation_every must be >= 1");
}

double cosine_lr(const TrainConfig& cfg, std::size_t update) noexcept {
    const double progress = static_cast<double>(update) / static_cast<double>(cfg.updates);
    return cfg.lr_end + 0.5 * (cfg.lr_start - cfg.lr_end) * (1.0 + std::cos(std::numbers::pi * progress));
}

}  // namespace synthcast::model
