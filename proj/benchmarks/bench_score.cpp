#include <benchmark/benchmark.h>

#include "synthcast/rng.hpp"
#include "synthcast/score/bootstrap.hpp"

using namespace synthcast;

static std::vector<score::ForecastRecord> records() {
    Engine rng = make_engine(5);
    std::vector<score::ForecastRecord> out;
    for (int l = 0; l < 51; ++l)
        for (int d = 0; d < 135; ++d)
            for (std::size_t h = 1; h <= 4; ++h)
                for (const char* m : {"persistence", "transformer_tc", "transformer_vac"}) {
                    score::ForecastRecord r;
                    r.location = "loc" + std::to_string(l);
                    r.date = d;
                    r.horizon = h;
                    r.model = m;
                    r.observed = uniform(rng, 0.0, 100.0);
                    const double c = uniform(rng, 20.0, 80.0);
                    r.quantiles = {c - 30, c - 20, c - 10, c, c + 10, c + 20, c + 30};
                    r.point = c;
                    out.push_back(r);
                }
    return out;
}

static void BM_BlockBootstrap(benchmark::State& state) {
    const auto recs = records();
    score::BootstrapConfig cfg;
    cfg.n_reps = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(score::bootstrap(recs, cfg, 1).models.data());
}
BENCHMARK(BM_BlockBootstrap)->Arg(100)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
