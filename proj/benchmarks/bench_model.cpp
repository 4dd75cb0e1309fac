#include <benchmark/benchmark.h>

#include "synthcast/data/quantile_grid.hpp"
#include "synthcast/data/windows.hpp"
#include "synthcast/model/transformer.hpp"

using namespace synthcast;

namespace {

model::ModelConfig config_for(std::int64_t d) {
    model::ModelConfig c;
    c.d_model = static_cast<std::size_t>(d);
    c.d_ff = 2 * c.d_model;
    return c;
}

std::vector<data::WindowExample> batch(std::size_t n) {
    Engine rng = make_engine(3);
    std::vector<data::WindowExample> out;
    for (std::size_t b = 0; b < n; ++b) {
        std::vector<double> in(20), tg(4);
        for (double& v : in) v = uniform(rng, 0.0, 100.0);
        for (double& v : tg) v = uniform(rng, 0.0, 100.0);
        out.push_back(data::make_window(in, tg));
    }
    return out;
}

}  // namespace

static void BM_Forward(benchmark::State& state) {
    const model::QuantileTransformer m(config_for(state.range(0)));
    const auto p = m.initial_parameters(1);
    const auto b = batch(1);
    for (auto _ : state) benchmark::DoNotOptimize(m.predict_quantiles(p, b[0].z_input).data());
}
BENCHMARK(BM_Forward)->Arg(32)->Arg(256);

static void BM_LossAndGradient(benchmark::State& state) {
    const model::QuantileTransformer m(config_for(state.range(0)));
    const auto p = m.initial_parameters(1);
    const auto b = batch(128);
    std::vector<double> g(p.size());
    for (auto _ : state) benchmark::DoNotOptimize(m.loss_and_gradient(p, b, data::kQuantileLevels, g));
    state.SetItemsProcessed(state.iterations() * 128);
}
BENCHMARK(BM_LossAndGradient)->Arg(32)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
