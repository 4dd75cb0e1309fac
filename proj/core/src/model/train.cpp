#include "synthcast/model/train.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include <spdlog/spdlog.h>

#include "synthcast/csv.hpp"
#include "synthcast/data/quantile_grid.hpp"
#include "synthcast/model/quantiles.hpp"
#include "synthcast/model/transformer.hpp"

namespace synthcast::model {

void ema_update(std::span<double> ema, std::span<const double> params, double alpha) {
    if (ema.size() != params.size()) throw std::invalid_argument("ema_update: size mismatch");
    const double beta = 1.0 - alpha;
    for (std::size_t i = 0; i < ema.size(); ++i) ema[i] = alpha * ema[i] + beta * params[i];
}

double context_mean_loss(std::span<const data::WindowExample> examples, std::span<const double> levels) {
    if (examples.empty()) throw std::invalid_argument("context_mean_loss: no examples");
    double total = 0.0;
    std::size_t count = 0;
    for (const auto& ex : examples) {
        const double mean = std::accumulate(ex.z_input.begin(), ex.z_input.end(), 0.0) /
                            static_cast<double>(ex.z_input.size());
        for (double y : ex.z_target)
            for (double tau : levels) total += pinball(tau, y - mean);
        count += ex.z_target.size() * levels.size();
    }
    return total / static_cast<double>(count);
}

TrainResult train(const data::WindowCorpus& corpus, std::span<const data::WindowExample> validation,
                  const ModelConfig& model_cfg, const TrainConfig& cfg, const TrainLogCallback& on_log) {
    cfg.validate();
    model_cfg.validate();
    if (corpus.total_windows() == 0) throw std::invalid_argument("train: corpus has no windows");
    if (validation.empty()) throw std::invalid_argument("train: empty validation set");
    if (corpus.context() != model_cfg.context || corpus.horizon() != model_cfg.horizon)
        throw std::invalid_argument("train: corpus window shape does not match the model config");
    if (model_cfg.n_quantiles != data::kNumLevels)
        throw std::invalid_argument("train: n_quantiles must match the quantile grid");

    const auto start = std::chrono::steady_clock::now();
    const std::span<const double> levels(data::kQuantileLevels);
    const QuantileTransformer model(model_cfg);
    const std::size_t n = model.parameter_count();

    std::vector<double> params = model.initial_parameters(cfg.seed);
    std::vector<double> ema = params;
    std::vector<double> grad(n), m(n, 0.0), v(n, 0.0);
    Engine rng = make_engine(cfg.seed, "train.batch");

    TrainResult result;
    result.initial_val_loss = model.loss(params, validation, levels);
    result.context_mean_val_loss = context_mean_loss(validation, levels);
    result.best = {model_cfg, ema, 0, result.initial_val_loss, kCheckpointVersion};
    const TrainLogRow first{0, cosine_lr(cfg, 0), std::nan(""), result.initial_val_loss, result.initial_val_loss};
    result.log.push_back(first);
    if (on_log) on_log(first);

    double b1_pow = 1.0, b2_pow = 1.0;
    double interval_loss = 0.0;
    std::size_t interval_count = 0;
    for (std::size_t u = 1; u <= cfg.updates; ++u) {
        const auto batch = data::perturb_duplicate(data::sample_batch(corpus, cfg.batch_size, rng), rng);
        const double loss = model.loss_and_gradient(params, batch, levels, grad);
        const bool grad_finite = std::all_of(grad.begin(), grad.end(), [](double g) { return std::isfinite(g); });
        if (!std::isfinite(loss) || !grad_finite) {
            result.status = TrainStatus::diverged;
            result.diagnostic = "non-finite " + std::string(std::isfinite(loss) ? "gradient" : "loss") +
                                " at update " + std::to_string(u) + "; returning best checkpoint from update " +
                                std::to_string(result.best.update_count);
            spdlog::error("train: {}", result.diagnostic);
            break;
        }

        // The rate at u-1 drives update u, so update 1 uses lr_start and the last uses lr(U-1).
        const double lr = cosine_lr(cfg, u - 1);
        b1_pow *= cfg.adam_beta1;
        b2_pow *= cfg.adam_beta2;
        const double c1 = 1.0 / (1.0 - b1_pow);
        const double c2 = 1.0 / (1.0 - b2_pow);
        for (std::size_t i = 0; i < n; ++i) {
            m[i] = cfg.adam_beta1 * m[i] + (1.0 - cfg.adam_beta1) * grad[i];
            v[i] = cfg.adam_beta2 * v[i] + (1.0 - cfg.adam_beta2) * grad[i] * grad[i];
            params[i] -= lr * (m[i] * c1) / (std::sqrt(v[i] * c2) + cfg.adam_epsilon);
        }
        ema_update(ema, params, cfg.ema_alpha);
        result.updates_run = u;
        interval_loss += loss;
        ++interval_count;

        if (u % cfg.validation_every == 0 || u == cfg.updates) {
            TrainLogRow row;
            row.update = u;
            row.lr = lr;
            row.train_loss = interval_loss / static_cast<double>(interval_count);
            row.val_loss = model.loss(params, validation, levels);
            row.ema_val_loss = model.loss(ema, validation, levels);
            interval_loss = 0.0;
            interval_count = 0;
            if (std::isfinite(row.ema_val_loss) && row.ema_val_loss < result.best.val_loss)
                result.best = {model_cfg, ema, u, row.ema_val_loss, kCheckpointVersion};
            result.log.push_back(row);
            if (on_log) on_log(row);
        }
    }
    result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

TrainResult train(const data::WindowCorpus& corpus, const ModelConfig& model_cfg, const TrainConfig& train_cfg,
                  const TrainLogCallback& on_log) {
    const auto validation = data::make_validation_set(corpus, kValidationWindows, train_cfg.seed);
    return train(corpus, validation, model_cfg, train_cfg, on_log);
}

void write_train_log(std::ostream& out, std::span<const TrainLogRow> rows) {
    csv::Writer w(out, {"update", "lr", "train_loss", "val_loss", "ema_val_loss"});
    for (const auto& r : rows) {
        if (std::isfinite(r.train_loss))
            w.row(r.update, r.lr, r.train_loss, r.val_loss, r.ema_val_loss);
        else
            w.row(r.update, r.lr, std::string("NA"), r.val_loss, r.ema_val_loss);
    }
}

}  // namespace synthcast::model
