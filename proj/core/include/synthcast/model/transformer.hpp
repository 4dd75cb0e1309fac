#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "synthcast/data/windows.hpp"
#include "synthcast/model/config.hpp"

namespace synthcast::model {

/// A named parameter tensor inside the flat parameter vector.
struct TensorSpec {
    enum class Init { fan_in, zeros, ones, position, readout_bias };

    std::string name;
    std::string group;  // e.g. "embedding", "layer0.attention", "readout"
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t offset = 0;
    Init init = Init::fan_in;

    [[nodiscard]] std::size_t size() const noexcept { return rows * cols; }
};

/// Placement of every tensor of a ModelConfig in one contiguous vector.
class ParamLayout {
public:
    struct Layer {
        std::size_t ln1_gain, ln1_bias, w_qkv, b_qkv, w_o, b_o;
        std::size_t ln2_gain, ln2_bias, w_1, b_1, w_2, b_2;
    };

    explicit ParamLayout(const ModelConfig& cfg);

    [[nodiscard]] std::size_t total() const noexcept { return total_; }
    [[nodiscard]] const std::vector<TensorSpec>& tensors() const noexcept { return tensors_; }

    std::size_t w_embed = 0, b_embed = 0, position = 0;
    std::vector<Layer> layers;
    std::size_t lnf_gain = 0, lnf_bias = 0, w_out = 0, b_out = 0;

private:
    std::size_t add(std::string name, std::string group, std::size_t rows, std::size_t cols, TensorSpec::Init init);

    std::vector<TensorSpec> tensors_;
    std::size_t total_ = 0;
};

/// Pre-norm transformer encoder over a length-C normalized context with a
/// linear readout of horizon x n_quantiles unconstrained outputs taken from
/// the most recent position. Stateless: parameters are passed explicitly,
/// so one instance can serve any number of parameter vectors concurrently.
class QuantileTransformer {
public:
    explicit QuantileTransformer(ModelConfig cfg);

    [[nodiscard]] const ModelConfig& config() const noexcept { return cfg_; }
    [[nodiscard]] const ParamLayout& layout() const noexcept { return layout_; }
    [[nodiscard]] std::size_t parameter_count() const noexcept { return layout_.total(); }

    /// Fan-in scaled uniform weights, unit norm gains, zero biases.
    [[nodiscard]] std::vector<double> initial_parameters(std::uint64_t seed) const;

    /// Encoder output, row-major context x d_model (before the final norm).
    [[nodiscard]] std::vector<double> encode(std::span<const double> params, std::span<const double> z_input) const;
    /// Readout from an encoder output; only the last row is used.
    [[nodiscard]] std::vector<double> readout(std::span<const double> params, std::span<const double> hidden) const;
    /// Raw outputs, row-major horizon x n_quantiles.
    [[nodiscard]] std::vector<double> forward(std::span<const double> params, std::span<const double> z_input) const;
    /// Monotone normalized-scale quantiles, row-major horizon x n_quantiles.
    [[nodiscard]] std::vector<double> predict_quantiles(std::span<const double> params,
                                                        std::span<const double> z_input) const;

    /// Mean pinball loss on the normalized scale.
    [[nodiscard]] double loss(std::span<const double> params, std::span<const data::WindowExample> batch,
                              std::span<const double> levels) const;
    /// Same loss; writes its gradient with respect to `params` into `grad`.
    double loss_and_gradient(std::span<const double> params, std::span<const data::WindowExample> batch,
                             std::span<const double> levels, std::span<double> grad) const;

private:
    void check_params(std::span<const double> params) const;
    void check_input(std::span<const double> z_input) const;

    ModelConfig cfg_;
    ParamLayout layout_;
};

}  // namespace synthcast::model
