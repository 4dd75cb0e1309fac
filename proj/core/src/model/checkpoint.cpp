#include "synthcast/model/checkpoint.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "synthcast/rng.hpp"

namespace synthcast::model {
namespace {

static_assert(std::endian::native == std::endian::little, "checkpoint format assumes a little-endian host");

constexpr std::array<char, 8> kMagic{'S', 'Y', 'N', 'C', 'K', 'P', 'T', '\0'};
constexpr std::size_t kHeaderBytes = 8 + 4 + 7 * 4 + 8 + 8 + 8;

template <typename T>
void put(std::vector<std::byte>& buf, T value) {
    const auto* p = reinterpret_cast<const std::byte*>(&value);
    buf.insert(buf.end(), p, p + sizeof(T));
}

class Reader {
public:
    explicit Reader(const std::vector<std::byte>& bytes) : bytes_(bytes) {}

    template <typename T>
    T get() {
        if (pos_ + sizeof(T) > bytes_.size())
            throw CheckpointError(CheckpointError::Kind::format, "checkpoint truncated");
        T value;
        std::memcpy(&value, bytes_.data() + pos_, sizeof(T));
        pos_ += sizeof(T);
        return value;
    }

private:
    const std::vector<std::byte>& bytes_;
    std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::byte> serialize_checkpoint(const Checkpoint& ckpt) {
    if (ckpt.params.empty()) throw std::invalid_argument("serialize_checkpoint: empty parameter vector");
    std::vector<std::byte> buf;
    buf.reserve(kHeaderBytes + 8 * ckpt.params.size() + 8);
    for (char c : kMagic) buf.push_back(static_cast<std::byte>(c));
    put<std::uint32_t>(buf, kCheckpointVersion);
    const auto& c = ckpt.config;
    for (std::size_t v : {c.d_model, c.n_layers, c.n_heads, c.d_ff, c.context, c.horizon, c.n_quantiles})
        put<std::uint32_t>(buf, static_cast<std::uint32_t>(v));
    put<std::uint64_t>(buf, ckpt.update_count);
    put<double>(buf, ckpt.val_loss);
    put<std::uint64_t>(buf, ckpt.params.size());
    for (double v : ckpt.params) put<double>(buf, v);
    put<std::uint64_t>(buf, fnv1a64(std::span<const std::byte>(buf)));
    return buf;
}

Checkpoint deserialize_checkpoint(const std::vector<std::byte>& bytes) {
    using Kind = CheckpointError::Kind;
    if (bytes.size() < kHeaderBytes + 8) throw CheckpointError(Kind::format, "checkpoint too short");
    if (std::memcmp(bytes.data(), kMagic.data(), kMagic.size()) != 0)
        throw CheckpointError(Kind::format, "not a checkpoint file (bad magic)");

    const std::size_t body = bytes.size() - 8;
    std::uint64_t stored = 0;
    std::memcpy(&stored, bytes.data() + body, 8);
    if (fnv1a64(std::span<const std::byte>(bytes.data(), body)) != stored)
        throw CheckpointError(Kind::checksum, "checkpoint checksum mismatch");

    Reader r(bytes);
    for (std::size_t i = 0; i < kMagic.size(); ++i) (void)r.get<char>();
    Checkpoint ckpt;
    ckpt.version = r.get<std::uint32_t>();
    if (ckpt.version != kCheckpointVersion)
        throw CheckpointError(Kind::format, "unsupported checkpoint version " + std::to_string(ckpt.version));
    auto& c = ckpt.config;
    for (std::size_t* field : {&c.d_model, &c.n_layers, &c.n_heads, &c.d_ff, &c.context, &c.horizon, &c.n_quantiles})
        *field = r.get<std::uint32_t>();
    ckpt.update_count = r.get<std::uint64_t>();
    ckpt.val_loss = r.get<double>();
    const auto n = r.get<std::uint64_t>();
    if (n != (body - kHeaderBytes) / 8 || (body - kHeaderBytes) % 8 != 0)
        throw CheckpointError(Kind::format, "checkpoint payload size does not match its header");
    try {
        c.validate();
    } catch (const std::invalid_argument& e) {
        throw CheckpointError(Kind::format, e.what());
    }
    ckpt.params.resize(n);
    for (auto& v : ckpt.params) v = r.get<double>();
    return ckpt;
}

void write_checkpoint(std::ostream& out, const Checkpoint& ckpt) {
    const auto bytes = serialize_checkpoint(ckpt);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw CheckpointError(CheckpointError::Kind::io, "failed writing checkpoint");
}

Checkpoint read_checkpoint(std::istream& in) {
    std::vector<char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::vector<std::byte> bytes(raw.size());
    std::memcpy(bytes.data(), raw.data(), raw.size());
    return deserialize_checkpoint(bytes);
}

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw CheckpointError(CheckpointError::Kind::io, "cannot open " + path.string() + " for writing");
    write_checkpoint(out, ckpt);
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CheckpointError(CheckpointError::Kind::io, "cannot open checkpoint " + path.string());
    return read_checkpoint(in);
}

}  // namespace synthcast::model
