#pragma once

#include <chrono>
#include <cstdint>
#include <vector>

#include "synthcast/sim/lhs.hpp"
#include "synthcast/sim/simulator.hpp"
#include "synthcast/sim/turnover.hpp"

namespace synthcast::sim {

struct SweepOptions {
    std::uint64_t master_seed = 0;
    std::size_t min_dominance_weeks = kDefaultMinDominanceWeeks;
    SimConstants constants{};
    /// 0 selects the SYNTHCAST_WORKERS environment variable, falling back to 1.
    unsigned workers = 0;
};

struct SweepResult {
    std::vector<SimOutput> screening;   // one run per design point, in design order
    std::vector<std::size_t> keepers;   // design indices that completed with turnover
    std::vector<SimOutput> replicates;  // ordered by (design index, replicate)
};

/// Seed of the screening run for design point `index`.
[[nodiscard]] std::uint64_t screening_seed(std::uint64_t master, std::size_t index) noexcept;
/// Seed of replicate `rep` of design point `index`.
[[nodiscard]] std::uint64_t replicate_seed(std::uint64_t master, std::size_t index,
                                           std::size_t rep) noexcept;

/// Screens every design point once, keeps completed turnover-positive
/// points, and reruns each keeper `reps_per_keeper` times with fresh seeds.
/// Runs execute in parallel; output content is independent of scheduling.
[[nodiscard]] SweepResult replicate_sweep(const LhsDesign& design, std::size_t reps_per_keeper,
                                          std::chrono::duration<double> wall_budget,
                                          const SweepOptions& options = {});

/// Worker count from SYNTHCAST_WORKERS (>= 1).
[[nodiscard]] unsigned worker_count_from_env();

}  // namespace synthcast::sim
