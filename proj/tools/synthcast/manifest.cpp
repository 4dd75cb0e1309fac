#include "manifest.hpp"

#include <fmt/format.h>

#include <fstream>
#include <iterator>
#include <vector>

#include <synthcast/rng.hpp>

namespace synthcast::cli {

std::string file_hash(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StageError(Exit::missing_input, "cannot read " + path.string());
    const std::vector<char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const auto* p = reinterpret_cast<const std::byte*>(bytes.data());
    return fmt::format("fnv1a64:{:016x}", fnv1a64(std::span<const std::byte>(p, bytes.size())));
}

Manifest::Manifest(std::string stage, const Context& ctx) : root_(ctx.settings.workdir) {
    doc_["stage"] = std::move(stage);
    doc_["tool_version"] = SYNTHCAST_VERSION;
    const std::string canonical = ctx.registry.canonical();
    doc_["config_hash"] = fmt::format("fnv1a64:{:016x}", fnv1a64(canonical));
    doc_["config"] = ctx.registry.values();
    doc_["seeds"]["master"] = ctx.settings.seed;
    doc_["inputs"] = nlohmann::ordered_json::object();
    doc_["outputs"] = nlohmann::ordered_json::object();
}

void Manifest::seed(const std::string& name, std::uint64_t value) { doc_["seeds"][name] = value; }

void Manifest::input(const std::filesystem::path& path) {
    doc_["inputs"][std::filesystem::relative(path, root_).generic_string()] = file_hash(path);
}

void Manifest::output(const std::filesystem::path& path) {
    doc_["outputs"][path.filename().string()] = file_hash(path);
}

void Manifest::write(const std::filesystem::path& dir) {
    std::ofstream out(dir / "manifest.json");
    out << doc_.dump(2) << '\n';
    if (!out) throw StageError(Exit::missing_input, "cannot write " + (dir / "manifest.json").string());
}

void require_file(const std::filesystem::path& path, const std::string& what) {
    if (!std::filesystem::exists(path))
        throw StageError(Exit::missing_input, "missing " + what + ": " + path.string());
}

void verify_stage(const std::filesystem::path& dir, const std::string& stage) {
    const auto path = dir / "manifest.json";
    require_file(path, stage + " manifest (run `synthcast " + stage + "` first)");
    nlohmann::json doc;
    try {
        std::ifstream in(path);
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw StageError(Exit::checksum, path.string() + " is not valid JSON: " + e.what());
    }
    if (!doc.contains("outputs") || !doc["outputs"].is_object())
        throw StageError(Exit::checksum, path.string() + " lists no outputs");
    for (const auto& [name, hash] : doc["outputs"].items()) {
        const auto file = dir / name;
        require_file(file, stage + " output");
        if (file_hash(file) != hash.get<std::string>())
            throw StageError(Exit::checksum, "checksum mismatch for " + file.string() + " (expected " +
                                                 hash.get<std::string>() + ", found " + file_hash(file) + ")");
    }
}

}  // namespace synthcast::cli
