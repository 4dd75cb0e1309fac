#include <benchmark/benchmark.h>

#include "synthcast/sim/lhs.hpp"
#include "synthcast/sim/simulator.hpp"

using namespace synthcast;

static void BM_RunSim(benchmark::State& state) {
    sim::SimParams p;
    p.fixed.end_day = static_cast<int>(state.range(0));
    std::uint64_t seed = 0;
    for (auto _ : state) {
        auto out = sim::run_sim(p, ++seed, std::chrono::seconds(600));
        benchmark::DoNotOptimize(out.tc.values.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RunSim)->Arg(365)->Arg(3650)->Unit(benchmark::kMillisecond);

static void BM_Lhs(benchmark::State& state) {
    const auto bounds = sim::simulator_bounds();
    for (auto _ : state) benchmark::DoNotOptimize(sim::lhs_sample(bounds, state.range(0), 7).points.data());
}
BENCHMARK(BM_Lhs)->Arg(4000);

BENCHMARK_MAIN();
