#include <CLI11.hpp>
#include <iostream>
#include <map>
#include <optional>

#include <spdlog/spdlog.h>

#include <synthcast/sim/sweep.hpp>

#include "settings.hpp"
#include "stages.hpp"

using namespace synthcast::cli;

int main(int argc, char** argv) {
    Settings settings;
    Registry registry(settings);

    CLI::App app{"synthcast: synthetic epidemic data, transformer quantile forecasts, and their evaluation"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    bool desk = false;
    bool verbose = false;
    bool quiet = false;
    app.add_option("-c,--config", config_path, "INI file; [section] key = value")->check(CLI::ExistingFile);
    app.add_flag("--desk", desk, "small acceptance-scale preset (applied before the config file)");
    app.add_flag("-v,--verbose", verbose, "debug logging");
    app.add_flag("-q,--quiet", quiet, "warnings and errors only");

    std::map<std::string, std::string> flags;
    for (const auto& e : registry.entries()) {
        app.add_option_function<std::string>(
               "--" + e.key, [&flags, key = e.key](const std::string& v) { flags[key] = v; }, e.help)
            ->group("Settings");
    }

    struct Command {
        const char* name;
        const char* help;
        void (*run)(const Context&);
    };
    const Command commands[] = {
        {"simulate", "Latin hypercube sweep, turnover screening and replicate runs", run_simulate},
        {"augment", "observation-model realizations of training runs; holdout truth", run_augment},
        {"train", "fit the quantile transformer and keep the best EMA checkpoint", run_train},
        {"forecast", "total-cases, variant-sum and persistence forecasts for holdout runs", run_forecast},
        {"score", "MAE, WIS, coverage and relative metrics", run_score},
        {"bootstrap", "bootstrap distributions and percentile intervals", run_bootstrap},
    };
    std::vector<void (*)(const Context&)> plan;
    for (const auto& c : commands) app.add_subcommand(c.name, c.help)->callback([&plan, &c] { plan = {c.run}; });
    app.add_subcommand("pipeline", "run every stage in order")->callback([&] {
        plan.clear();
        for (const auto& c : commands) plan.push_back(c.run);
    });
    bool show_config = false;
    app.add_subcommand("config", "print the effective settings as an INI file")->callback([&] { show_config = true; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(Exit::config);
    }

    spdlog::set_level(verbose ? spdlog::level::debug : quiet ? spdlog::level::warn : spdlog::level::info);
    spdlog::set_pattern("[%H:%M:%S] [%^%l%$] %v");

    try {
        if (desk) settings.apply_desk();
        if (!config_path.empty()) registry.load_file(config_path);
        for (const auto& [key, value] : flags) registry.set(key, value);
        settings.model.context = settings.context;
        settings.model.horizon = settings.horizon;
        settings.bootstrap.baseline = settings.baseline;
        settings.workers = synthcast::sim::worker_count_from_env();
        settings.validate();
    } catch (const std::exception& e) {
        spdlog::error("configuration: {}", e.what());
        return static_cast<int>(Exit::config);
    }

    if (show_config) {
        std::string section;
        for (const auto& [key, value] : registry.values()) {
            const auto dot = key.find('.');
            if (key.substr(0, dot) != section) {
                if (!section.empty()) std::cout << '\n';
                section = key.substr(0, dot);
                std::cout << '[' << section << "]\n";
            }
            std::cout << key.substr(dot + 1) << " = " << value << '\n';
        }
        return 0;
    }

    const Context ctx{settings, registry};
    try {
        for (auto* stage : plan) stage(ctx);
    } catch (const StageError& e) {
        spdlog::error("{}", e.what());
        return static_cast<int>(e.code());
    } catch (const std::invalid_argument& e) {
        spdlog::error("invalid input: {}", e.what());
        return static_cast<int>(Exit::missing_input);
    } catch (const std::exception& e) {
        spdlog::error("{}", e.what());
        return 1;
    }
    return 0;
}
