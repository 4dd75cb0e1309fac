#pragma once

#include <cstddef>
#include <cstdint>

namespace synthcast::model {

struct ModelConfig {
    std::size_t d_model = 256;
    std::size_t n_layers = 2;
    std::size_t n_heads = 4;
    std::size_t d_ff = 512;
    std::size_t context = 20;
    std::size_t horizon = 4;
    std::size_t n_quantiles = 27;

    /// Desk-scale variant: d_model 32, feedforward 64.
    [[nodiscard]] static ModelConfig desk() noexcept;

    [[nodiscard]] std::size_t outputs() const noexcept { return horizon * n_quantiles; }
    [[nodiscard]] std::size_t head_dim() const noexcept { return d_model / n_heads; }

    /// Throws std::invalid_argument if any dimension is zero or d_model is not
    /// divisible by n_heads.
    void validate() const;

    friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

struct TrainConfig {
    std::size_t updates = 2000;
    double lr_start = 5e-4;
    double lr_end = 5e-5;
    double ema_alpha = 0.98;
    std::size_t batch_size = 64;
    std::size_t validation_every = 200;
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.999;
    double adam_epsilon = 1e-8;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Cosine decay from lr_start at update 0 to lr_end at update `updates`.
[[nodiscard]] double cosine_lr(const TrainConfig& cfg, std::size_t update) noexcept;

}  // namespace synthcast::model
