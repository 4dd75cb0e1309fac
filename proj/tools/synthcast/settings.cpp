#include "settings.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <sstream>
#include <stdexcept>

#include <synthcast/csv.hpp>

namespace synthcast::cli {

void Settings::apply_desk() {
    design_size = 200;
    reps = 4;
    wall_budget = 60.0;
    model = model::ModelConfig::desk();
    train.updates = 2000;
    n_draws = 10'000;
    forecast_stride = 2;
}

void Settings::validate() const {
    if (design_size == 0) throw std::invalid_argument("sim.design_size must be >= 1");
    if (reps == 0) throw std::invalid_argument("sim.reps must be >= 1");
    if (!(wall_budget > 0.0)) throw std::invalid_argument("sim.wall_budget must be > 0");
    obs.validate();
    if (!(holdout_fraction > 0.0 && holdout_fraction < 1.0))
        throw std::invalid_argument("data.holdout_fraction must lie in (0, 1)");
    if (!(validation_fraction > 0.0 && validation_fraction < 1.0))
        throw std::invalid_argument("data.validation_fraction must lie in (0, 1)");
    if (validation_windows == 0) throw std::invalid_argument("data.validation_windows must be >= 1");
    model.validate();
    train.validate();
    if (model.context != context || model.horizon != horizon)
        throw std::invalid_argument("model context/horizon must equal data.context/data.horizon");
    if (n_draws == 0) throw std::invalid_argument("forecast.n_draws must be >= 1");
    if (forecast_stride == 0) throw std::invalid_argument("forecast.stride must be >= 1");
    bootstrap.validate();
}

namespace {

template <typename T>
T parse_value(const std::string& text);

template <>
std::size_t parse_value(const std::string& text) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
        throw std::invalid_argument("expected a nonnegative integer, got '" + text + "'");
    return v;
}
template <>
double parse_value(const std::string& text) {
    return csv::parse_double(text);
}
template <>
std::string parse_value(const std::string& text) {
    return text;
}

std::string show(std::size_t v) { return std::to_string(v); }
std::string show(double v) { return csv::format_double(v); }
std::string show(const std::string& v) { return v; }

}  // namespace

Registry::Registry(Settings& s) {
    auto add = [this](std::string key, std::string help, auto& field) {
        using T = std::remove_reference_t<decltype(field)>;
        index_[key] = entries_.size();
        entries_.push_back({std::move(key), std::move(help), [&field](const std::string& v) { field = parse_value<T>(v); },
                            [&field] { return show(field); }});
    };
    auto add_path = [this](std::string key, std::string help, std::filesystem::path& field) {
        index_[key] = entries_.size();
        entries_.push_back({std::move(key), std::move(help), [&field](const std::string& v) { field = v; },
                            [&field] { return field.string(); }});
    };

    index_["general.seed"] = entries_.size();
    entries_.push_back({"general.seed", "master seed",
                        [&s](const std::string& v) { s.seed = parse_value<std::size_t>(v); },
                        [&s] { return std::to_string(s.seed); }});
    add_path("io.workdir", "directory holding every stage's outputs", s.workdir);

    add("sim.design_size", "Latin hypercube size", s.design_size);
    add("sim.reps", "replicate runs per retained design point", s.reps);
    add("sim.wall_budget", "wall-clock seconds per simulator run", s.wall_budget);
    add("sim.min_dominance_weeks", "weeks of dominance that count toward turnover", s.min_dominance_weeks);

    add("obs.t_prime_min", "shortest rescaled length", s.obs.t_prime_min);
    add("obs.kappa_min", "lower bound of the noise spread", s.obs.kappa.lower);
    add("obs.kappa_max", "upper bound of the noise spread", s.obs.kappa.upper);
    add("obs.outlier_count_min", "fewest outliers per realization", s.obs.outlier_count_min);
    add("obs.outlier_count_max", "most outliers per realization", s.obs.outlier_count_max);
    add("obs.outlier_probability", "chance a realization receives outliers", s.obs.outlier_probability);
    add("obs.tc_realizations", "realizations per total-cases series", s.obs.tc_realizations);
    add("obs.tc_noised", "noised realizations per total-cases series", s.obs.tc_noised);
    add("obs.vac_max_variants", "variants selected per run", s.obs.vac_max_variants);

    add("data.context", "context length C", s.context);
    add("data.horizon", "forecast horizon H", s.horizon);
    add("data.holdout_fraction", "share of runs reserved for evaluation", s.holdout_fraction);
    add("data.validation_fraction", "share of training runs used for validation", s.validation_fraction);
    add("data.validation_windows", "size of the frozen validation set", s.validation_windows);

    add("model.d_model", "embedding width", s.model.d_model);
    add("model.n_layers", "encoder layers", s.model.n_layers);
    add("model.n_heads", "attention heads", s.model.n_heads);
    add("model.d_ff", "feedforward width", s.model.d_ff);

    add("train.updates", "weight updates", s.train.updates);
    add("train.lr_start", "initial learning rate", s.train.lr_start);
    add("train.lr_end", "final learning rate", s.train.lr_end);
    add("train.ema_alpha", "EMA coefficient", s.train.ema_alpha);
    add("train.batch_size", "windows per batch before perturbed copies", s.train.batch_size);
    add("train.validation_every", "updates between validation passes", s.train.validation_every);

    add("forecast.n_draws", "Monte Carlo draws for variant sums", s.n_draws);
    add("forecast.stride", "weeks between forecast dates", s.forecast_stride);

    add("score.baseline", "reference model for relative metrics", s.baseline);
    add("score.min_lookback", "h-step changes required before the persistence fallback", s.min_lookback);
    add("score.bootstrap_reps", "bootstrap replicates", s.bootstrap.n_reps);
    add("score.block_length", "consecutive forecast dates per block", s.bootstrap.block_length);
    add("score.n_blocks", "blocks per sampled location (0 = cover all dates)", s.bootstrap.n_blocks);
    index_["score.bootstrap_mode"] = entries_.size();
    entries_.push_back({"score.bootstrap_mode", "block or iid",
                        [&s](const std::string& v) { s.bootstrap.mode = score::parse_bootstrap_mode(v); },
                        [&s] { return score::to_string(s.bootstrap.mode); }});
}

void Registry::set(const std::string& key, const std::string& value) {
    const auto it = index_.find(key);
    if (it == index_.end()) throw std::invalid_argument("unknown setting '" + key + "'");
    try {
        entries_[it->second].set(value);
    } catch (const std::exception& e) {
        throw std::invalid_argument(key + ": " + e.what());
    }
}

void Registry::load_file(const std::filesystem::path& path) {
    std::vector<CLI::ConfigItem> items;
    try {
        items = CLI::ConfigINI().from_file(path.string());
    } catch (const CLI::Error& e) {
        throw std::invalid_argument("cannot read config " + path.string() + ": " + e.what());
    }
    for (const auto& item : items) {
        if (item.name == "++" || item.name == "--") continue;  // section markers
        std::string key;
        for (const auto& p : item.parents) key += p + ".";
        key += item.name;
        if (key.find('.') == std::string::npos) key = "general." + key;
        if (item.inputs.size() != 1) throw std::invalid_argument(key + ": expected exactly one value");
        set(key, item.inputs.front());
    }
}

std::string Registry::canonical() const {
    std::ostringstream out;
    for (const auto& [key, value] : values())
        if (key != "io.workdir") out << key << " = " << value << '\n';
    return out.str();
}

std::map<std::string, std::string> Registry::values() const {
    std::map<std::string, std::string> out;
    for (const auto& e : entries_) out[e.key] = e.get();
    return out;
}

}  // namespace synthcast::cli
