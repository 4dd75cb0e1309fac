#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "synthcast/model/config.hpp"

namespace synthcast::model {

inline constexpr std::uint32_t kCheckpointVersion = 1;

/// Selected EMA parameters and the metadata needed to rebuild the model.
struct Checkpoint {
    ModelConfig config;
    std::vector<double> params;
    std::uint64_t update_count = 0;
    double val_loss = 0.0;
    std::uint32_t version = kCheckpointVersion;
};

class CheckpointError : public std::runtime_error {
public:
    enum class Kind { io, format, checksum };

    CheckpointError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    [[nodiscard]] Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

// Binary layout, little-endian:
//   "SYNCKPT\0" | u32 version | 7 x u32 config | u64 updates | f64 val_loss
//   | u64 n | n x f64 | u64 FNV-1a of everything before it
void write_checkpoint(std::ostream& out, const Checkpoint& ckpt);
[[nodiscard]] Checkpoint read_checkpoint(std::istream& in);

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt);
[[nodiscard]] Checkpoint load_checkpoint(const std::filesystem::path& path);

[[nodiscard]] std::vector<std::byte> serialize_checkpoint(const Checkpoint& ckpt);
[[nodiscard]] Checkpoint deserialize_checkpoint(const std::vector<std::byte>& bytes);

}  // namespace synthcast::model
