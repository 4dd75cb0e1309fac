#include "synthcast/model/grad_check.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>

#include "synthcast/data/quantile_grid.hpp"
#include "synthcast/data/windows.hpp"
#include "synthcast/model/transformer.hpp"
#include "synthcast/rng.hpp"

namespace synthcast::model {

namespace {

std::vector<double> levels_for(std::size_t n) {
    if (n == data::kNumLevels) return {data::kQuantileLevels.begin(), data::kQuantileLevels.end()};
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = (static_cast<double>(k) + 1.0) / (static_cast<double>(n) + 1.0);
    return out;
}

}  // namespace

GradCheckReport grad_check(const ModelConfig& cfg, std::uint64_t seed, std::size_t batch_size, double step,
                           double floor) {
    const auto t0 = std::chrono::steady_clock::now();
    const QuantileTransformer model(cfg);
    const auto levels = levels_for(cfg.n_quantiles);
    Engine rng = make_engine(seed, "gradcheck");

    // Jitter the initial point so that zero biases and unit gains do not hide errors.
    std::vector<double> params = model.initial_parameters(seed);
    for (double& p : params) p += uniform(rng, -0.1, 0.1);

    std::vector<data::WindowExample> batch;
    for (std::size_t b = 0; b < batch_size; ++b) {
        std::vector<double> input(cfg.context);
        for (double& x : input) x = uniform(rng, 0.0, 1.0);
        data::WindowExample ex = data::make_window(std::move(input), std::vector<double>(cfg.horizon, 0.0));
        const auto q = model.predict_quantiles(params, ex.z_input);
        for (std::size_t h = 0; h < cfg.horizon; ++h) {
            const double* row = q.data() + h * cfg.n_quantiles;
            // Midpoint of a random gap, or outside the range by a clear margin.
            const auto k = uniform_int<std::size_t>(rng, 0, cfg.n_quantiles);
            double target;
            if (k == 0)
                target = row[0] - 0.5;
            else if (k == cfg.n_quantiles)
                target = row[cfg.n_quantiles - 1] + 0.5;
            else
                target = 0.5 * (row[k - 1] + row[k]);
            ex.z_target[h] = target;
        }
        batch.push_back(std::move(ex));
    }

    std::vector<double> analytic(params.size());
    (void)model.loss_and_gradient(params, batch, levels, analytic);

    GradCheckReport report;
    std::map<std::string, GroupError> groups;
    for (const auto& t : model.layout().tensors()) {
        auto& g = groups[t.group];
        g.group = t.group;
        for (std::size_t i = t.offset; i < t.offset + t.size(); ++i) {
            const double saved = params[i];
            auto central = [&](double h) {
                params[i] = saved + h;
                const double up = model.loss(params, batch, levels);
                params[i] = saved - h;
                const double down = model.loss(params, batch, levels);
                params[i] = saved;
                return (up - down) / (2.0 * h);
            };
            // Richardson extrapolation cancels the h^2 truncation term.
            const double numeric = (4.0 * central(step) - central(2.0 * step)) / 3.0;
            const double a = analytic[i];
            const double rel = std::abs(a - numeric) / std::max({std::abs(a), std::abs(numeric), floor});
            g.max_rel_error = std::max(g.max_rel_error, rel);
            ++g.parameters;
            ++report.checked;
            if (rel > report.max_rel_error || report.worst_parameter.empty()) {
                report.max_rel_error = rel;
                report.worst_parameter = t.name + "[" + std::to_string(i - t.offset) + "]";
            }
        }
    }
    for (auto& [name, g] : groups) report.groups.push_back(g);
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

}  // namespace synthcast::model
