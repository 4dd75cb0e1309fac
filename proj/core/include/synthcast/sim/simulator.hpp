#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "synthcast/series.hpp"
#include "synthcast/sim/params.hpp"

namespace synthcast::sim {

/// A (antigenic type, deleterious load) combination. Strains sharing an
/// antigenic type are reported together as that type's attributable cases.
struct Strain {
    std::int32_t id = 0;
    std::int32_t antigenic_type = 0;
    double antigenic_position = 0.0;
    std::int32_t deleterious_load = 0;
    std::optional<std::int32_t> parent_id;
};

struct AntigenicType {
    std::int32_t id = 0;
    double position = 0.0;
    std::optional<std::int32_t> parent_id;
    int emergence_day = 0;
};

/// Host state. A host with strain < 0 is not infected; its protection comes
/// from the antigenic positions it has cleared.
struct Host {
    std::int32_t strain = -1;
    std::vector<double> immune_history;

    [[nodiscard]] bool infected() const noexcept { return strain >= 0; }
};

enum class SimStatus { completed, wall_time_exceeded, extinct };

[[nodiscard]] std::string_view to_string(SimStatus s) noexcept;
[[nodiscard]] SimStatus parse_sim_status(std::string_view text);

struct SimOutput {
    std::string run_id;
    SurveillanceSeries tc;
    std::vector<SurveillanceSeries> vacs;  // ordered by antigenic type id
    SimStatus status = SimStatus::completed;
    bool turnover_flag = false;

    std::uint64_t seed = 0;
    std::size_t param_index = 0;
    std::int64_t replicate = -1;  // -1 for the screening pass
    int days_simulated = 0;
    double wall_seconds = 0.0;
    std::size_t antigenic_types = 0;
    std::size_t strains = 0;
};

/// Daily head count handed to an optional observer.
struct DayCensus {
    int day = 0;
    std::int64_t hosts = 0;
    std::int64_t uninfected = 0;
    std::int64_t infected = 0;
};

using CensusObserver = std::function<void(const DayCensus&)>;

/// Probability that a host with the given cleared positions is infected by a
/// strain at `position` carrying `load` deleterious mutations.
[[nodiscard]] double infection_risk(std::span<const double> history, double position,
                                    std::int32_t load, const SimParams& params) noexcept;

/// Runs one stochastic simulation. Extinction and wall-budget exhaustion are
/// reported through SimOutput::status; invalid parameters throw.
[[nodiscard]] SimOutput run_sim(const SimParams& params, std::uint64_t seed,
                                std::chrono::duration<double> wall_budget,
                                const CensusObserver& observer = {});

}  // namespace synthcast::sim
