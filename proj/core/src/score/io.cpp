#include "synthcast/score/io.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <stdexcept>

#include "synthcast/csv.hpp"

namespace synthcast::score {

Truth read_truth(std::istream& in) {
    const auto table = csv::Table::parse(in, "truth");
    const auto loc = table.column("location");
    const auto week = table.column("week");
    const auto value = table.column("value");
    Truth truth;
    for (std::size_t r = 0; r < table.rows(); ++r)
        truth[table.at(r, loc)][csv::parse_int(table.at(r, week))] = csv::parse_double(table.at(r, value));
    return truth;
}

void write_truth(std::ostream& out, const Truth& truth) {
    csv::Writer w(out, {"location", "week", "value"});
    for (const auto& [loc, series] : truth)
        for (const auto& [week, value] : series) w.row(loc, static_cast<long long>(week), value);
}

std::vector<ForecastRecord> join_records(std::span<const forecast::QuantileForecast> forecasts,
                                         const std::string& model, const Truth& truth, std::size_t* unmatched) {
    std::vector<ForecastRecord> out;
    std::size_t missing = 0;
    for (const auto& f : forecasts) {
        ForecastRecord r;
        r.location = f.location;
        r.date = csv::parse_int(f.forecast_date);
        r.horizon = f.horizon;
        r.model = model;
        const auto loc = truth.find(f.location);
        const auto week = r.date + static_cast<std::int64_t>(f.horizon);
        if (loc == truth.end() || !loc->second.contains(week)) {
            ++missing;
            continue;
        }
        r.observed = loc->second.at(week);
        for (std::size_t k = 0; k < data::kNumEvalLevels; ++k) r.quantiles[k] = f.at(data::kEvalLevels[k]);
        r.point = f.point_value();
        validate_record(r);
        out.push_back(std::move(r));
    }
    if (unmatched) *unmatched = missing;
    return out;
}

void write_scores(std::ostream& out, std::span<const ForecastRecord> records, const ScoreConfig& cfg,
                  const std::string& baseline) {
    cfg.validate();
    std::set<std::string> models;
    std::set<std::size_t> horizons;
    for (const auto& r : records) {
        models.insert(r.model);
        horizons.insert(r.horizon);
    }
    auto subset = [&](const std::string& model, std::size_t h) {
        std::vector<ForecastRecord> s;
        for (const auto& r : records)
            if (r.model == model && (h == 0 || r.horizon == h)) s.push_back(r);
        return s;
    };
    std::vector<std::size_t> groups{0};
    groups.insert(groups.end(), horizons.begin(), horizons.end());

    csv::Writer w(out, {"model", "horizon", "metric", "value"});
    for (const auto& model : models) {
        for (std::size_t h : groups) {
            const std::string hl = h == 0 ? "all" : std::to_string(h);
            const auto s = subset(model, h);
            if (s.empty()) continue;
            const double m = mae(s);
            const double wi = mean_wis(s, cfg);
            w.row(model, hl, "n", static_cast<unsigned long>(s.size()));
            w.row(model, hl, "mae", m);
            w.row(model, hl, "wis", wi);
            for (double a : cfg.alphas) {
                const int pct = static_cast<int>(std::lround((1.0 - a) * 100.0));
                w.row(model, hl, "coverage_" + std::to_string(pct), coverage(s, a));
            }
            if (models.contains(baseline)) {
                const auto b = subset(baseline, h);
                if (!b.empty()) {
                    w.row(model, hl, "rmae", relative(m, mae(b)));
                    w.row(model, hl, "rwis", relative(wi, mean_wis(b, cfg)));
                }
            }
        }
    }
}

void write_bootstrap(std::ostream& out, const BootstrapResult& result) {
    csv::Writer w(out, {"replicate", "model", "comparator", "metric", "value"});
    for (const auto& [key, dist] : result.replicates)
        for (std::size_t i = 0; i < dist.size(); ++i) w.row(static_cast<unsigned long>(i), key.first, "", key.second, dist[i]);
    for (const auto& [key, dist] : result.paired)
        for (std::size_t i = 0; i < dist.size(); ++i)
            w.row(static_cast<unsigned long>(i), std::get<0>(key), std::get<1>(key), std::get<2>(key), dist[i]);
}

void write_bootstrap_intervals(std::ostream& out, const BootstrapResult& result) {
    csv::Writer w(out, {"model", "comparator", "metric", "estimate", "lower", "upper"});
    for (const auto& [key, iv] : result.intervals) w.row(key.first, "", key.second, iv.estimate, iv.lower, iv.upper);
    for (const auto& [key, iv] : result.paired_intervals)
        w.row(std::get<0>(key), std::get<1>(key), std::get<2>(key), iv.estimate, iv.lower, iv.upper);
}

}  // namespace synthcast::score
