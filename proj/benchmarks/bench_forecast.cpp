#include <benchmark/benchmark.h>

#include <cmath>

#include "synthcast/forecast/forecaster.hpp"

using namespace synthcast;

static void BM_ForecastVac(benchmark::State& state) {
    const auto cfg = model::ModelConfig::desk();
    const forecast::Forecaster f(
        model::Checkpoint{cfg, model::QuantileTransformer(cfg).initial_parameters(1), 0, 0.0, model::kCheckpointVersion});
    std::vector<std::vector<double>> vacs(static_cast<std::size_t>(state.range(0)), std::vector<double>(20));
    for (std::size_t v = 0; v < vacs.size(); ++v)
        for (std::size_t t = 0; t < 20; ++t) vacs[v][t] = 10.0 * (v + 1) + 5.0 * std::sin(0.3 * t);
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(f.forecast_vac(vacs, forecast::kDefaultDraws, ++seed).data());
}
BENCHMARK(BM_ForecastVac)->Arg(1)->Arg(4)->Arg(10)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
