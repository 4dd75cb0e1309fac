#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "synthcast/rng.hpp"
#include "synthcast/series.hpp"

namespace synthcast::data {

inline constexpr std::size_t kDefaultContext = 20;
inline constexpr std::size_t kDefaultHorizon = 4;
inline constexpr double kPerturbLow = 0.85;
inline constexpr double kPerturbHigh = 1.15;

/// One input/target pair. `z_input`/`z_target` are the raw values divided by
/// `norm` = max(input), or the raw values when that maximum is zero or not
/// finite.
struct WindowExample {
    std::vector<double> input;
    std::vector<double> target;
    double norm = 1.0;
    bool rescaled = false;
    std::vector<double> z_input;
    std::vector<double> z_target;
    std::size_t source = 0;  // series index within its corpus
    std::size_t start = 0;   // index of the first input step
};

/// Number of contiguous (context + horizon) blocks in a series of `length`.
[[nodiscard]] constexpr std::size_t enumerate_windows(std::size_t length, std::size_t context,
                                                      std::size_t horizon) noexcept {
    return length + 1 > context + horizon ? length + 1 - context - horizon : 0;
}

/// Builds a normalized example from raw input/target values.
[[nodiscard]] WindowExample make_window(std::vector<double> input, std::vector<double> target);

/// Immutable index of every finite window across a set of series.
class WindowCorpus {
public:
    WindowCorpus(std::vector<SurveillanceSeries> series, std::size_t context, std::size_t horizon);

    [[nodiscard]] std::size_t context() const noexcept { return context_; }
    [[nodiscard]] std::size_t horizon() const noexcept { return horizon_; }
    [[nodiscard]] std::size_t series_count() const noexcept { return series_.size(); }
    [[nodiscard]] const SurveillanceSeries& series(std::size_t i) const { return series_[i]; }
    [[nodiscard]] std::size_t window_count(std::size_t series) const { return starts_[series].size(); }
    [[nodiscard]] std::size_t total_windows() const noexcept { return total_; }

    /// k-th finite window of a series.
    [[nodiscard]] WindowExample window(std::size_t series, std::size_t k) const;

    /// Series chosen with probability proportional to its window count, then
    /// a window uniformly within it.
    [[nodiscard]] WindowExample sample(Engine& rng) const;

    /// Per-series window counts, for reproducibility audits.
    void write_manifest(std::ostream& out) const;

private:
    std::vector<SurveillanceSeries> series_;
    std::size_t context_;
    std::size_t horizon_;
    std::vector<std::vector<std::size_t>> starts_;
    std::vector<std::size_t> cumulative_;  // cumulative window counts
    std::size_t total_ = 0;
};

/// Throws std::invalid_argument on an empty corpus; batch_size 0 gives an empty batch.
[[nodiscard]] std::vector<WindowExample> sample_batch(const WindowCorpus& corpus, std::size_t batch_size,
                                                      Engine& rng);

/// Appends, for each example, a copy whose raw input is multiplied elementwise
/// by U(0.85, 1.15) factors and renormalized; raw targets are unchanged.
[[nodiscard]] std::vector<WindowExample> perturb_duplicate(std::span<const WindowExample> batch, Engine& rng);

/// Splits series into (train, validation) by source run so that no run
/// contributes to both, when there are at least two runs.
struct SourceSplit {
    std::vector<SurveillanceSeries> train;
    std::vector<SurveillanceSeries> validation;
};
[[nodiscard]] SourceSplit split_by_source(std::vector<SurveillanceSeries> series, double validation_fraction,
                                          std::uint64_t seed);

/// A fixed set of windows drawn with a reserved seed.
[[nodiscard]] std::vector<WindowExample> make_validation_set(const WindowCorpus& corpus, std::size_t count,
                                                             std::uint64_t seed);

}  // namespace synthcast::data
