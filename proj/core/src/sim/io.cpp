#include "synthcast/sim/io.hpp"

#include <map>
#include <ostream>
#include <stdexcept>
#include <tuple>

#include <nlohmann/json.hpp>

#include "synthcast/csv.hpp"

namespace synthcast::sim {

std::string series_key(const SurveillanceSeries& s) {
    const std::string& run = s.source_run.empty() ? s.id : s.source_run;
    return run + "/" + std::string(to_string(s.kind)) + "/" + std::to_string(s.variant_id) + "/" +
           std::to_string(s.realization);
}

void write_series_csv(std::ostream& out, std::span<const SurveillanceSeries> series,
                      bool with_realization_columns) {
    std::vector<std::string> header{"series_id", "kind", "variant_id", "week", "value"};
    if (with_realization_columns) header.insert(header.end(), {"realization_id", "noised", "outliered"});
    csv::Writer w(out, header);
    for (const auto& s : series) {
        const std::string& run = s.source_run.empty() ? s.id : s.source_run;
        const std::string_view kind = to_string(s.kind);
        for (std::size_t t = 0; t < s.values.size(); ++t) {
            if (with_realization_columns)
                w.row(run, kind, static_cast<long long>(s.variant_id), static_cast<long long>(t), s.values[t],
                      static_cast<long long>(s.realization), s.noised ? 1 : 0, s.outliered ? 1 : 0);
            else
                w.row(run, kind, static_cast<long long>(s.variant_id), static_cast<long long>(t), s.values[t]);
        }
    }
}

std::vector<SurveillanceSeries> read_series_csv(const std::filesystem::path& path) {
    const auto table = csv::Table::read(path);
    const auto c_id = table.column("series_id");
    const auto c_kind = table.column("kind");
    const auto c_var = table.column("variant_id");
    const auto c_week = table.column("week");
    const auto c_val = table.column("value");
    const bool extended = table.has_column("realization_id");
    const auto c_real = extended ? table.column("realization_id") : 0;
    const auto c_noise = extended ? table.column("noised") : 0;
    const auto c_out = extended ? table.column("outliered") : 0;

    // Preserve first-appearance order of series.
    std::map<std::tuple<std::string, std::string, long long, long long>, std::size_t> index;
    std::vector<SurveillanceSeries> out;
    for (std::size_t r = 0; r < table.rows(); ++r) {
        const std::string& run = table.at(r, c_id);
        const std::string& kind = table.at(r, c_kind);
        const long long variant = csv::parse_int(table.at(r, c_var));
        const long long real = extended ? csv::parse_int(table.at(r, c_real)) : -1;
        auto key = std::make_tuple(run, kind, variant, real);
        auto it = index.find(key);
        if (it == index.end()) {
            SurveillanceSeries s;
            s.source_run = run;
            s.kind = parse_series_kind(kind);
            s.variant_id = variant;
            s.realization = real;
            if (extended) {
                s.noised = table.at(r, c_noise) == "1";
                s.outliered = table.at(r, c_out) == "1";
            }
            s.id = series_key(s);
            it = index.emplace(std::move(key), out.size()).first;
            out.push_back(std::move(s));
        }
        auto& s = out[it->second];
        const long long week = csv::parse_int(table.at(r, c_week));
        if (week != static_cast<long long>(s.values.size()))
            throw std::runtime_error(path.string() + ": series '" + s.id + "' weeks are not contiguous from 0");
        s.values.push_back(csv::parse_double(table.at(r, c_val)));
    }
    return out;
}

std::vector<SurveillanceSeries> collect_series(std::span<const SimOutput> runs) {
    std::vector<SurveillanceSeries> out;
    for (const auto& run : runs) {
        out.push_back(run.tc);
        out.insert(out.end(), run.vacs.begin(), run.vacs.end());
    }
    return out;
}

void write_design_csv(std::ostream& out, const LhsDesign& design) {
    std::vector<std::string> header{"sample"};
    const auto& names = default_bounds();
    if (design.dims() != names.size())
        throw std::invalid_argument("write_design_csv: design must span the simulator parameter space");
    for (const auto& b : names) header.emplace_back(b.name);
    csv::Writer w(out, header);
    for (std::size_t i = 0; i < design.n_samples; ++i) {
        const auto row = design.row(i);
        out << i;
        for (double v : row) out << ',' << csv::format_double(v);
        out << '\n';
    }
}

LhsDesign read_design_csv(const std::filesystem::path& path) {
    const auto table = csv::Table::read(path);
    LhsDesign design;
    for (const auto& b : default_bounds()) design.bounds.push_back({b.lower, b.upper});
    std::vector<std::size_t> cols;
    for (const auto& b : default_bounds()) cols.push_back(table.column(b.name));
    design.n_samples = table.rows();
    for (std::size_t r = 0; r < table.rows(); ++r)
        for (auto c : cols) design.points.push_back(csv::parse_double(table.at(r, c)));
    return design;
}

std::string run_manifest_json(std::span<const SimOutput> runs, const LhsDesign& design) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    const auto& names = default_bounds();
    for (const auto& run : runs) {
        nlohmann::ordered_json j;
        j["run_id"] = run.run_id;
        j["param_index"] = run.param_index;
        j["replicate"] = run.replicate;
        j["seed"] = run.seed;
        j["status"] = std::string(to_string(run.status));
        j["turnover"] = run.turnover_flag;
        j["days_simulated"] = run.days_simulated;
        j["weeks"] = run.tc.values.size();
        j["antigenic_types"] = run.antigenic_types;
        j["wall_seconds"] = run.wall_seconds;
        nlohmann::ordered_json params;
        if (run.param_index < design.n_samples) {
            const auto row = design.row(run.param_index);
            for (std::size_t d = 0; d < names.size(); ++d) params[std::string(names[d].name)] = row[d];
        }
        j["params"] = std::move(params);
        arr.push_back(std::move(j));
    }
    return arr.dump(2);
}

}  // namespace synthcast::sim
