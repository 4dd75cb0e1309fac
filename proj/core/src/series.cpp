#include "synthcast/series.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace synthcast {

std::string_view to_string(SeriesKind kind) noexcept {
    return kind == SeriesKind::tc ? "tc" : "vac";
}

SeriesKind parse_series_kind(std::string_view text) {
    if (text == "tc") return SeriesKind::tc;
    if (text == "vac") return SeriesKind::vac;
    throw std::invalid_argument("unknown series kind '" + std::string(text) + "'");
}

double SurveillanceSeries::total() const noexcept {
    return std::accumulate(values.begin(), values.end(), 0.0);
}

void validate_series(const SurveillanceSeries& s) {
    if (s.values.empty()) throw std::invalid_argument("series '" + s.id + "' is empty");
    for (double v : s.values) {
        if (!std::isfinite(v) || v < 0.0)
            throw std::invalid_argument("series '" + s.id + "' has a negative or non-finite value");
    }
}

}  // namespace synthcast
