#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "synthcast/series.hpp"
#include "synthcast/sim/lhs.hpp"
#include "synthcast/sim/simulator.hpp"

namespace synthcast::sim {

/// Long-form series CSV: `series_id,kind,variant_id,week,value`, optionally
/// followed by `realization_id,noised,outliered` for observation-model output.
/// The series_id column carries the simulator run id.
void write_series_csv(std::ostream& out, std::span<const SurveillanceSeries> series,
                      bool with_realization_columns);
[[nodiscard]] std::vector<SurveillanceSeries> read_series_csv(const std::filesystem::path& path);

/// Composite in-memory id: run/kind/variant/realization.
[[nodiscard]] std::string series_key(const SurveillanceSeries& s);

/// All series (tc then vacs) of a batch of runs, in run order.
[[nodiscard]] std::vector<SurveillanceSeries> collect_series(std::span<const SimOutput> runs);

/// One row per design point with named parameter columns.
void write_design_csv(std::ostream& out, const LhsDesign& design);
[[nodiscard]] LhsDesign read_design_csv(const std::filesystem::path& path);

/// Run manifest: parameters, seed, status and wall time for every run.
[[nodiscard]] std::string run_manifest_json(std::span<const SimOutput> runs, const LhsDesign& design);

}  // namespace synthcast::sim
