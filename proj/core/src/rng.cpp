#include "synthcast/rng.hpp"

namespace synthcast {

std::uint64_t fnv1a64(std::span<const std::byte> bytes, std::uint64_t basis) noexcept {
    std::uint64_t h = basis;
    for (std::byte b : bytes) {
        h ^= static_cast<std::uint64_t>(b);
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t fnv1a64(std::string_view text) noexcept {
    return fnv1a64(std::as_bytes(std::span(text.data(), text.size())));
}

std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::string_view stream, std::uint64_t index,
                          std::uint64_t sub_index) noexcept {
    std::uint64_t s = mix64(master ^ fnv1a64(stream));
    s = mix64(s ^ mix64(index + 0x632be59bd9b4e019ULL));
    return mix64(s ^ mix64(sub_index + 0x8cb92ba72f3d8dd7ULL));
}

}  // namespace synthcast
