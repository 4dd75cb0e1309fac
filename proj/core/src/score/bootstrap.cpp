#include "synthcast/score/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <tuple>

#include <spdlog/spdlog.h>

#include "synthcast/parallel.hpp"
#include "synthcast/rng.hpp"
#include "synthcast/stats.hpp"

namespace synthcast::score {

std::string to_string(BootstrapMode mode) { return mode == BootstrapMode::block ? "block" : "iid"; }

BootstrapMode parse_bootstrap_mode(const std::string& text) {
    if (text == "block") return BootstrapMode::block;
    if (text == "iid") return BootstrapMode::iid;
    throw std::invalid_argument("unknown bootstrap mode '" + text + "' (expected block or iid)");
}

void BootstrapConfig::validate() const {
    if (n_reps == 0) throw std::invalid_argument("BootstrapConfig: n_reps must be >= 1");
    if (block_length == 0) throw std::invalid_argument("BootstrapConfig: block_length must be >= 1");
    score.validate();
}

Interval percentile_interval(std::span<const double> values, double estimate) {
    std::vector<double> copy(values.begin(), values.end());
    return {estimate, quantile_type7(copy, 0.025), quantile_type7(copy, 0.975)};
}

namespace {

struct Sums {
    double abs_error = 0.0;
    double wis = 0.0;
    std::size_t count = 0;
};

// Per-(location, date position, model) sums over horizons.
struct Units {
    std::vector<std::string> models;
    std::vector<std::string> locations;
    std::vector<std::size_t> dates_per_location;
    std::vector<std::size_t> first_unit;  // unit index of (location, position 0)
    std::vector<Sums> sums;               // unit * n_models + model
    std::size_t n_units = 0;
};

Units build_units(std::span<const ForecastRecord> records, const ScoreConfig& cfg) {
    Units u;
    std::set<std::string> model_set, loc_set;
    for (const auto& r : records) {
        model_set.insert(r.model);
        loc_set.insert(r.location);
    }
    u.models.assign(model_set.begin(), model_set.end());
    u.locations.assign(loc_set.begin(), loc_set.end());
    std::vector<std::set<std::int64_t>> dates(u.locations.size());
    auto loc_index = [&](const std::string& l) {
        return static_cast<std::size_t>(std::lower_bound(u.locations.begin(), u.locations.end(), l) -
                                        u.locations.begin());
    };
    auto model_index = [&](const std::string& m) {
        return static_cast<std::size_t>(std::lower_bound(u.models.begin(), u.models.end(), m) - u.models.begin());
    };
    for (const auto& r : records) dates[loc_index(r.location)].insert(r.date);
    std::vector<std::vector<std::int64_t>> ordered(u.locations.size());
    for (std::size_t l = 0; l < u.locations.size(); ++l) {
        ordered[l].assign(dates[l].begin(), dates[l].end());
        u.first_unit.push_back(u.n_units);
        u.dates_per_location.push_back(ordered[l].size());
        u.n_units += ordered[l].size();
    }
    u.sums.assign(u.n_units * u.models.size(), {});
    for (const auto& r : records) {
        const std::size_t l = loc_index(r.location);
        const auto pos = static_cast<std::size_t>(
            std::lower_bound(ordered[l].begin(), ordered[l].end(), r.date) - ordered[l].begin());
        Sums& s = u.sums[(u.first_unit[l] + pos) * u.models.size() + model_index(r.model)];
        s.abs_error += absolute_error(r);
        s.wis += wis(r, cfg);
        ++s.count;
    }
    return u;
}

struct Scores {
    std::vector<double> mae, wis;
};

Scores score_units(const Units& u, std::span<const std::size_t> picks) {
    const std::size_t m = u.models.size();
    std::vector<Sums> total(m);
    for (std::size_t unit : picks)
        for (std::size_t k = 0; k < m; ++k) {
            const Sums& s = u.sums[unit * m + k];
            total[k].abs_error += s.abs_error;
            total[k].wis += s.wis;
            total[k].count += s.count;
        }
    Scores out;
    for (const auto& t : total) {
        const double n = static_cast<double>(t.count);
        out.mae.push_back(t.count ? t.abs_error / n : std::nan(""));
        out.wis.push_back(t.count ? t.wis / n : std::nan(""));
    }
    return out;
}

}  // namespace

BootstrapResult bootstrap(std::span<const ForecastRecord> records, const BootstrapConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    if (records.empty()) throw std::invalid_argument("bootstrap: no records");
    for (const auto& r : records) validate_record(r);
    const Units u = build_units(records, cfg.score);
    const std::size_t n_models = u.models.size();

    const auto base_it = std::find(u.models.begin(), u.models.end(), cfg.baseline);
    const bool have_baseline = base_it != u.models.end();
    if (!have_baseline) spdlog::warn("bootstrap: baseline model '{}' absent; relative metrics omitted", cfg.baseline);
    const auto base = static_cast<std::size_t>(base_it - u.models.begin());

    const std::size_t min_dates = *std::min_element(u.dates_per_location.begin(), u.dates_per_location.end());
    std::size_t block = cfg.block_length;
    if (min_dates < block) {
        spdlog::warn("bootstrap: only {} forecast dates at the shortest location; block length {} -> {}", min_dates,
                     block, min_dates);
        block = min_dates;
    }
    const std::size_t max_dates = *std::max_element(u.dates_per_location.begin(), u.dates_per_location.end());
    const std::size_t n_blocks = cfg.n_blocks ? cfg.n_blocks : (max_dates + block - 1) / block;
    const std::size_t n_locations = u.locations.size();
    const std::size_t units_per_rep = n_locations * n_blocks * block;

    BootstrapResult result;
    result.models = u.models;
    result.metrics = have_baseline ? std::vector<std::string>{"mae", "wis", "rmae", "rwis"}
                                   : std::vector<std::string>{"mae", "wis"};
    result.block_length = block;
    result.n_blocks = n_blocks;

    // Per-replicate scores, filled in replicate order.
    std::vector<Scores> reps(cfg.n_reps);
    std::vector<std::size_t> picked_records(cfg.n_reps);
    parallel_for(cfg.n_reps, cfg.workers, [&](std::size_t rep) {
        Engine rng = make_engine(seed, "bootstrap", rep);
        std::vector<std::size_t> picks;
        picks.reserve(units_per_rep);
        if (cfg.mode == BootstrapMode::block) {
            for (std::size_t i = 0; i < n_locations; ++i) {
                const auto l = uniform_int<std::size_t>(rng, 0, n_locations - 1);
                const std::size_t n_dates = u.dates_per_location[l];
                for (std::size_t b = 0; b < n_blocks; ++b) {
                    const auto start = uniform_int<std::size_t>(rng, 0, n_dates - block);
                    for (std::size_t k = 0; k < block; ++k) picks.push_back(u.first_unit[l] + start + k);
                }
            }
        } else {
            for (std::size_t i = 0; i < units_per_rep; ++i)
                picks.push_back(uniform_int<std::size_t>(rng, 0, u.n_units - 1));
        }
        reps[rep] = score_units(u, picks);
        std::size_t n = 0;
        for (std::size_t unit : picks) n += u.sums[unit * n_models].count;
        picked_records[rep] = n;
    });
    result.records_per_model = picked_records.front();

    std::vector<std::size_t> all(u.n_units);
    for (std::size_t i = 0; i < u.n_units; ++i) all[i] = i;
    const Scores full = score_units(u, all);

    auto metric_value = [&](const Scores& s, std::size_t k, const std::string& metric) {
        if (metric == "mae") return s.mae[k];
        if (metric == "wis") return s.wis[k];
        if (metric == "rmae") return relative(s.mae[k], s.mae[base]);
        return relative(s.wis[k], s.wis[base]);
    };
    for (std::size_t k = 0; k < n_models; ++k) {
        for (const auto& metric : result.metrics) {
            auto& dist = result.replicates[{u.models[k], metric}];
            dist.reserve(cfg.n_reps);
            for (const auto& s : reps) dist.push_back(metric_value(s, k, metric));
            result.intervals[{u.models[k], metric}] = percentile_interval(dist, metric_value(full, k, metric));
        }
    }
    for (std::size_t a = 0; a < n_models; ++a)
        for (std::size_t b = a + 1; b < n_models; ++b) {
            for (const auto& metric : result.metrics) {
                auto& dist = result.paired[{u.models[a], u.models[b], metric}];
                for (const auto& s : reps) dist.push_back(metric_value(s, a, metric) - metric_value(s, b, metric));
                result.paired_intervals[{u.models[a], u.models[b], metric}] =
                    percentile_interval(dist, metric_value(full, a, metric) - metric_value(full, b, metric));
            }
        }
    return result;
}

BootstrapResult block_bootstrap(std::span<const ForecastRecord> records, BootstrapConfig cfg, std::uint64_t seed) {
    cfg.mode = BootstrapMode::block;
    return bootstrap(records, cfg, seed);
}

BootstrapResult iid_bootstrap(std::span<const ForecastRecord> records, BootstrapConfig cfg, std::uint64_t seed) {
    cfg.mode = BootstrapMode::iid;
    return bootstrap(records, cfg, seed);
}

}  // namespace synthcast::score
