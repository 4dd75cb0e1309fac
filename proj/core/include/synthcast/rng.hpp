#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

namespace synthcast {

/// Engine used for every stochastic component. Bit-reproducible on a given
/// standard library implementation.
using Engine = std::mt19937_64;

/// 64-bit FNV-1a over raw bytes.
[[nodiscard]] std::uint64_t fnv1a64(std::span<const std::byte> bytes,
                                    std::uint64_t basis = 0xcbf29ce484222325ULL) noexcept;
[[nodiscard]] std::uint64_t fnv1a64(std::string_view text) noexcept;

/// SplitMix64 finalizer.
[[nodiscard]] std::uint64_t mix64(std::uint64_t x) noexcept;

/// Named substream seed: all randomness in the toolkit flows from one master
/// seed through (stream name, index...) pairs, so results do not depend on
/// the order in which substreams are consumed.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t master, std::string_view stream,
                                        std::uint64_t index = 0,
                                        std::uint64_t sub_index = 0) noexcept;

[[nodiscard]] inline Engine make_engine(std::uint64_t seed) { return Engine{seed}; }

[[nodiscard]] inline Engine make_engine(std::uint64_t master, std::string_view stream,
                                        std::uint64_t index = 0, std::uint64_t sub_index = 0) {
    return Engine{derive_seed(master, stream, index, sub_index)};
}

/// Uniform real in [lo, hi).
[[nodiscard]] inline double uniform(Engine& rng, double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Uniform integer in [lo, hi] (inclusive).
template <typename Int>
[[nodiscard]] Int uniform_int(Engine& rng, Int lo, Int hi) {
    return std::uniform_int_distribution<Int>(lo, hi)(rng);
}

}  // namespace synthcast
