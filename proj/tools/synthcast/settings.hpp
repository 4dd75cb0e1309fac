#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <synthcast/model/config.hpp>
#include <synthcast/obs/observation.hpp>
#include <synthcast/score/bootstrap.hpp>

namespace synthcast::cli {

struct Settings {
    std::uint64_t seed = 1;
    std::filesystem::path workdir = "synthcast_run";

    // sim
    std::size_t design_size = 4000;
    std::size_t reps = 20;
    double wall_budget = 36000.0;  // seconds per run
    std::size_t min_dominance_weeks = 8;

    // obs
    obs::ObsConfig obs{};

    // data
    std::size_t context = 20;
    std::size_t horizon = 4;
    double holdout_fraction = 0.2;
    double validation_fraction = 0.2;
    std::size_t validation_windows = 2048;

    model::ModelConfig model{};
    model::TrainConfig train{};

    // forecast
    std::size_t n_draws = 100'000;
    std::size_t forecast_stride = 1;

    // score
    std::string baseline = "persistence";
    std::size_t min_lookback = 12;
    score::BootstrapConfig bootstrap{};

    unsigned workers = 1;

    /// Acceptance-scale preset: small design, narrow model, fewer draws.
    void apply_desk();
    /// Cross-section consistency; throws std::invalid_argument.
    void validate() const;
};

/// Every configurable value, addressable as "section.key" both in the INI file
/// and as a --section.key flag.
class Registry {
public:
    struct Entry {
        std::string key;
        std::string help;
        std::function<void(const std::string&)> set;
        std::function<std::string()> get;
    };

    explicit Registry(Settings& s);

    [[nodiscard]] const std::vector<Entry>& entries() const noexcept { return entries_; }
    /// Throws std::invalid_argument for unknown keys or unparsable values.
    void set(const std::string& key, const std::string& value);
    /// Applies an INI file; section names map to key prefixes.
    void load_file(const std::filesystem::path& path);
    /// "key = value" lines in key order; the input to the config hash.
    [[nodiscard]] std::string canonical() const;
    [[nodiscard]] std::map<std::string, std::string> values() const;

private:
    std::vector<Entry> entries_;
    std::map<std::string, std::size_t> index_;
};

}  // namespace synthcast::cli
