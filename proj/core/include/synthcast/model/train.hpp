#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "synthcast/data/windows.hpp"
#include "synthcast/model/checkpoint.hpp"
#include "synthcast/model/config.hpp"

namespace synthcast::model {

inline constexpr std::size_t kValidationWindows = 2048;

struct TrainLogRow {
    std::size_t update = 0;
    double lr = 0.0;
    double train_loss = 0.0;  // mean over updates since the previous row
    double val_loss = 0.0;    // raw parameters
    double ema_val_loss = 0.0;
};

enum class TrainStatus { completed, diverged };

struct TrainResult {
    Checkpoint best;
    std::vector<TrainLogRow> log;
    TrainStatus status = TrainStatus::completed;
    std::string diagnostic;
    std::size_t updates_run = 0;
    double initial_val_loss = 0.0;
    /// Loss of a model that emits the context mean at every level.
    double context_mean_val_loss = 0.0;
    double wall_seconds = 0.0;
};

using TrainLogCallback = std::function<void(const TrainLogRow&)>;

/// Adam on perturb-duplicated batches with a cosine schedule; keeps the EMA
/// snapshot with the lowest validation loss. A non-finite training loss stops
/// the run and returns the best finite snapshot so far.
[[nodiscard]] TrainResult train(const data::WindowCorpus& corpus, std::span<const data::WindowExample> validation,
                                const ModelConfig& model_cfg, const TrainConfig& train_cfg,
                                const TrainLogCallback& on_log = {});

/// Same, with a validation set drawn from `corpus` itself.
[[nodiscard]] TrainResult train(const data::WindowCorpus& corpus, const ModelConfig& model_cfg,
                                const TrainConfig& train_cfg, const TrainLogCallback& on_log = {});

/// One EMA step: ema = alpha * ema + (1 - alpha) * params.
void ema_update(std::span<double> ema, std::span<const double> params, double alpha);

[[nodiscard]] double context_mean_loss(std::span<const data::WindowExample> examples, std::span<const double> levels);

void write_train_log(std::ostream& out, std::span<const TrainLogRow> rows);

}  // namespace synthcast::model
