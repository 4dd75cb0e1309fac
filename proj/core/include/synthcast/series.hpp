#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace synthcast {

enum class SeriesKind { tc, vac };

[[nodiscard]] std::string_view to_string(SeriesKind kind) noexcept;
[[nodiscard]] SeriesKind parse_series_kind(std::string_view text);

/// Weekly nonnegative case series: total cases (tc) or one antigenic type's
/// attributable cases (vac), plus the provenance needed to trace it back to
/// a simulator run and observation-model realization.
struct SurveillanceSeries {
    std::string id;
    SeriesKind kind = SeriesKind::tc;
    std::int64_t variant_id = -1;  // antigenic type id for vac, -1 for tc
    std::vector<double> values;

    std::string source_run;      // id of the simulator run it descends from
    std::int64_t realization = -1;  // observation-model realization index, -1 when clean
    bool noised = false;
    bool outliered = false;

    [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
    [[nodiscard]] double total() const noexcept;
};

/// Throws std::invalid_argument unless the series is nonempty with finite,
/// nonnegative values.
void validate_series(const SurveillanceSeries& s);

}  // namespace synthcast
