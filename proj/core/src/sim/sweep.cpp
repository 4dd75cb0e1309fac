#include "synthcast/sim/sweep.hpp"

#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>

#include <spdlog/spdlog.h>

#include "synthcast/parallel.hpp"
#include "synthcast/rng.hpp"

namespace synthcast::sim {

std::uint64_t screening_seed(std::uint64_t master, std::size_t index) noexcept {
    return derive_seed(master, "sim.screen", index);
}

std::uint64_t replicate_seed(std::uint64_t master, std::size_t index, std::size_t rep) noexcept {
    return derive_seed(master, "sim.replicate", index, rep);
}

unsigned worker_count_from_env() {
    if (const char* env = std::getenv("SYNTHCAST_WORKERS")) {
        try {
            const long v = std::stol(env);
            if (v >= 1) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
        spdlog::warn("ignoring invalid SYNTHCAST_WORKERS='{}'", env);
    }
    return 1;
}

namespace {

std::string run_id(std::size_t index, std::int64_t rep) {
    return rep < 0 ? "p" + std::to_string(index) + "_screen"
                   : "p" + std::to_string(index) + "_r" + std::to_string(rep);
}

void tag(SimOutput& out, std::size_t index, std::int64_t rep) {
    out.run_id = run_id(index, rep);
    out.param_index = index;
    out.replicate = rep;
    out.tc.id = out.run_id + "_tc";
    out.tc.source_run = out.run_id;
    for (auto& v : out.vacs) {
        v.id = out.run_id + "_v" + std::to_string(v.variant_id);
        v.source_run = out.run_id;
    }
}

}  // namespace

SweepResult replicate_sweep(const LhsDesign& design, std::size_t reps_per_keeper,
                            std::chrono::duration<double> wall_budget, const SweepOptions& options) {
    if (design.n_samples == 0) throw std::invalid_argument("replicate_sweep: empty design");
    if (reps_per_keeper == 0) throw std::invalid_argument("replicate_sweep: reps_per_keeper must be >= 1");
    const unsigned workers = options.workers > 0 ? options.workers : worker_count_from_env();

    SweepResult result;
    result.screening.resize(design.n_samples);
    parallel_for(design.n_samples, workers, [&](std::size_t i) {
        const SimParams params = params_from_row(design.row(i), options.constants);
        SimOutput out = run_sim(params, screening_seed(options.master_seed, i), wall_budget);
        tag(out, i, -1);
        if (out.status == SimStatus::completed)
            out.turnover_flag = classify_turnover(out, options.min_dominance_weeks);
        result.screening[i] = std::move(out);
    });

    for (std::size_t i = 0; i < design.n_samples; ++i)
        if (result.screening[i].status == SimStatus::completed && result.screening[i].turnover_flag)
            result.keepers.push_back(i);
    spdlog::info("screening: {} of {} design points completed with turnover", result.keepers.size(),
                 design.n_samples);

    result.replicates.resize(result.keepers.size() * reps_per_keeper);
    parallel_for(result.replicates.size(), workers, [&](std::size_t job) {
        const std::size_t index = result.keepers[job / reps_per_keeper];
        const std::size_t rep = job % reps_per_keeper;
        const SimParams params = params_from_row(design.row(index), options.constants);
        SimOutput out = run_sim(params, replicate_seed(options.master_seed, index, rep), wall_budget);
        tag(out, index, static_cast<std::int64_t>(rep));
        if (out.status == SimStatus::completed)
            out.turnover_flag = classify_turnover(out, options.min_dominance_weeks);
        result.replicates[job] = std::move(out);
    });
    return result;
}

}  // namespace synthcast::sim
