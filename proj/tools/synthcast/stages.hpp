#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "settings.hpp"

namespace synthcast::cli {

enum class Exit : int { ok = 0, config = 2, missing_input = 3, numeric = 4, wall_time = 5, checksum = 6 };

class StageError : public std::runtime_error {
public:
    StageError(Exit code, const std::string& what) : std::runtime_error(what), code_(code) {}
    [[nodiscard]] Exit code() const noexcept { return code_; }

private:
    Exit code_;
};

struct Context {
    const Settings& settings;
    const Registry& registry;

    [[nodiscard]] std::filesystem::path dir(const std::string& stage) const { return settings.workdir / stage; }
};

void run_simulate(const Context& ctx);
void run_augment(const Context& ctx);
void run_train(const Context& ctx);
void run_forecast(const Context& ctx);
void run_score(const Context& ctx);
void run_bootstrap(const Context& ctx);

}  // namespace synthcast::cli
