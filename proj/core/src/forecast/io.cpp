#include "synthcast/forecast/io.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>
#include <tuple>

#include "synthcast/csv.hpp"

namespace synthcast::forecast {

namespace {
constexpr std::string_view kTargetSuffix = " wk ahead cases";
}

std::string target_label(std::size_t horizon) { return std::to_string(horizon) + std::string(kTargetSuffix); }

std::size_t parse_target_label(const std::string& label) {
    if (label.size() <= kTargetSuffix.size() || !label.ends_with(kTargetSuffix))
        throw std::invalid_argument("unrecognized forecast target '" + label + "'");
    const auto h = csv::parse_int(label.substr(0, label.size() - kTargetSuffix.size()));
    if (h < 1) throw std::invalid_argument("forecast horizon must be >= 1 in '" + label + "'");
    return static_cast<std::size_t>(h);
}

void write_forecasts(std::ostream& out, std::span<const QuantileForecast> forecasts) {
    csv::Writer w(out, {"location", "forecast_date", "target", "quantile_level", "value"});
    for (const auto& f : forecasts) {
        const std::string target = target_label(f.horizon);
        for (std::size_t k = 0; k < f.levels.size(); ++k)
            w.row(f.location, f.forecast_date, target, f.levels[k], f.values[k]);
        w.row(f.location, f.forecast_date, target, std::string("NA"), f.point_value());
    }
}

std::vector<QuantileForecast> read_forecasts(std::istream& in) {
    const auto table = csv::Table::parse(in, "forecasts");
    for (const char* col : {"location", "forecast_date", "target", "quantile_level", "value"})
        if (!table.has_column(col)) throw std::runtime_error(std::string("forecast CSV lacks column '") + col + "'");
    const auto loc = table.column("location");
    const auto date = table.column("forecast_date");
    const auto target = table.column("target");
    const auto level = table.column("quantile_level");
    const auto value = table.column("value");

    std::vector<QuantileForecast> out;
    std::map<std::tuple<std::string, std::string, std::size_t>, std::size_t> index;
    for (std::size_t r = 0; r < table.rows(); ++r) {
        const std::size_t h = parse_target_label(table.at(r, target));
        const auto key = std::make_tuple(table.at(r, loc), table.at(r, date), h);
        auto [it, inserted] = index.try_emplace(key, out.size());
        if (inserted) out.push_back({table.at(r, loc), table.at(r, date), h, {}, {}});
        auto& f = out[it->second];
        const double v = csv::parse_double(table.at(r, value));
        if (table.at(r, level) == "NA") {
            f.point = v;
            continue;
        }
        f.levels.push_back(csv::parse_double(table.at(r, level)));
        f.values.push_back(v);
    }
    for (auto& f : out) {
        if (f.levels.empty()) throw std::runtime_error("forecast CSV: point row without quantiles for " + f.location);
        const auto median = std::find(f.levels.begin(), f.levels.end(), 0.5);
        if (!std::isnan(f.point) && median != f.levels.end() && f.values[median - f.levels.begin()] == f.point)
            f.point = std::numeric_limits<double>::quiet_NaN();
    }
    return out;
}

}  // namespace synthcast::forecast
