#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "stages.hpp"

namespace synthcast::cli {

/// "fnv1a64:<16 hex digits>" of a file's bytes.
[[nodiscard]] std::string file_hash(const std::filesystem::path& path);

/// Provenance record written next to a stage's outputs.
class Manifest {
public:
    Manifest(std::string stage, const Context& ctx);

    void seed(const std::string& name, std::uint64_t value);
    void input(const std::filesystem::path& path);
    void output(const std::filesystem::path& path);
    nlohmann::ordered_json& extra() { return doc_["summary"]; }
    void write(const std::filesystem::path& dir);

private:
    std::filesystem::path root_;
    nlohmann::ordered_json doc_;
};

/// Checks that every output listed in `dir`/manifest.json still has its
/// recorded hash. Missing manifest -> missing_input; mismatch -> checksum.
void verify_stage(const std::filesystem::path& dir, const std::string& stage);

/// Throws missing_input unless `path` exists.
void require_file(const std::filesystem::path& path, const std::string& what);

}  // namespace synthcast::cli
