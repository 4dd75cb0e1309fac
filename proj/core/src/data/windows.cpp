#include "synthcast/data/windows.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>

#include <spdlog/spdlog.h>

#include "synthcast/csv.hpp"

namespace synthcast::data {

WindowExample make_window(std::vector<double> input, std::vector<double> target) {
    WindowExample w;
    w.input = std::move(input);
    w.target = std::move(target);
    const double m = w.input.empty() ? 0.0 : *std::max_element(w.input.begin(), w.input.end());
    w.rescaled = std::isfinite(m) && m > 0.0;
    w.norm = w.rescaled ? m : 1.0;
    w.z_input.resize(w.input.size());
    w.z_target.resize(w.target.size());
    for (std::size_t i = 0; i < w.input.size(); ++i) w.z_input[i] = w.input[i] / w.norm;
    for (std::size_t i = 0; i < w.target.size(); ++i) w.z_target[i] = w.target[i] / w.norm;
    return w;
}

WindowCorpus::WindowCorpus(std::vector<SurveillanceSeries> series, std::size_t context, std::size_t horizon)
    : series_(std::move(series)), context_(context), horizon_(horizon) {
    if (context == 0 || horizon == 0) throw std::invalid_argument("WindowCorpus: context and horizon must be >= 1");
    const std::size_t span = context + horizon;
    starts_.resize(series_.size());
    cumulative_.resize(series_.size());
    std::size_t dropped = 0;
    for (std::size_t i = 0; i < series_.size(); ++i) {
        const auto& v = series_[i].values;
        const std::size_t n = enumerate_windows(v.size(), context, horizon);
        // Sliding count of non-finite values inside the current block.
        std::size_t bad = 0;
        for (std::size_t t = 0; t < std::min(span, v.size()); ++t) bad += !std::isfinite(v[t]);
        for (std::size_t s = 0; s < n; ++s) {
            if (s > 0) {
                bad -= !std::isfinite(v[s - 1]);
                bad += !std::isfinite(v[s + span - 1]);
            }
            if (bad == 0)
                starts_[i].push_back(s);
            else
                ++dropped;
        }
        total_ += starts_[i].size();
        cumulative_[i] = total_;
    }
    if (dropped > 0) spdlog::warn("WindowCorpus: dropped {} windows containing non-finite values", dropped);
}

WindowExample WindowCorpus::window(std::size_t series, std::size_t k) const {
    const auto& v = series_.at(series).values;
    const std::size_t s = starts_.at(series).at(k);
    auto first = v.begin() + static_cast<std::ptrdiff_t>(s);
    WindowExample w = make_window(std::vector<double>(first, first + static_cast<std::ptrdiff_t>(context_)),
                                  std::vector<double>(first + static_cast<std::ptrdiff_t>(context_),
                                                      first + static_cast<std::ptrdiff_t>(context_ + horizon_)));
    w.source = series;
    w.start = s;
    return w;
}

WindowExample WindowCorpus::sample(Engine& rng) const {
    if (total_ == 0) throw std::invalid_argument("WindowCorpus::sample: corpus has no windows");
    const auto u = uniform_int<std::size_t>(rng, 0, total_ - 1);
    const auto series = static_cast<std::size_t>(
        std::upper_bound(cumulative_.begin(), cumulative_.end(), u) - cumulative_.begin());
    const auto k = uniform_int<std::size_t>(rng, 0, starts_[series].size() - 1);
    return window(series, k);
}

void WindowCorpus::write_manifest(std::ostream& out) const {
    csv::Writer w(out, {"series", "run", "kind", "variant_id", "realization_id", "length", "windows"});
    for (std::size_t i = 0; i < series_.size(); ++i) {
        const auto& s = series_[i];
        w.row(static_cast<long long>(i), s.source_run, to_string(s.kind), static_cast<long long>(s.variant_id),
              static_cast<long long>(s.realization), static_cast<long long>(s.values.size()),
              static_cast<long long>(starts_[i].size()));
    }
}

std::vector<WindowExample> sample_batch(const WindowCorpus& corpus, std::size_t batch_size, Engine& rng) {
    if (corpus.total_windows() == 0) throw std::invalid_argument("sample_batch: corpus has no windows");
    std::vector<WindowExample> batch;
    batch.reserve(batch_size);
    for (std::size_t b = 0; b < batch_size; ++b) batch.push_back(corpus.sample(rng));
    return batch;
}

std::vector<WindowExample> perturb_duplicate(std::span<const WindowExample> batch, Engine& rng) {
    std::vector<WindowExample> out(batch.begin(), batch.end());
    out.reserve(2 * batch.size());
    std::uniform_real_distribution<double> factor(kPerturbLow, kPerturbHigh);
    for (const auto& ex : batch) {
        std::vector<double> input = ex.input;
        for (double& v : input) v *= factor(rng);
        WindowExample copy = make_window(std::move(input), ex.target);
        copy.source = ex.source;
        copy.start = ex.start;
        out.push_back(std::move(copy));
    }
    return out;
}

SourceSplit split_by_source(std::vector<SurveillanceSeries> series, double validation_fraction, std::uint64_t seed) {
    std::set<std::string> runs;
    for (const auto& s : series) runs.insert(s.source_run.empty() ? s.id : s.source_run);
    std::vector<std::string> ordered(runs.begin(), runs.end());
    Engine rng = make_engine(seed, "data.split");
    std::shuffle(ordered.begin(), ordered.end(), rng);

    std::size_t held = 0;
    if (ordered.size() >= 2) {
        held = static_cast<std::size_t>(std::ceil(validation_fraction * static_cast<double>(ordered.size())));
        held = std::clamp<std::size_t>(held, 1, ordered.size() - 1);
    }
    const std::set<std::string> validation_runs(ordered.begin(), ordered.begin() + static_cast<std::ptrdiff_t>(held));

    SourceSplit split;
    for (auto& s : series) {
        const std::string& run = s.source_run.empty() ? s.id : s.source_run;
        if (held == 0) {
            split.train.push_back(s);
            split.validation.push_back(std::move(s));
        } else if (validation_runs.contains(run)) {
            split.validation.push_back(std::move(s));
        } else {
            split.train.push_back(std::move(s));
        }
    }
    if (held == 0) spdlog::warn("split_by_source: single source run; validation windows overlap training");
    return split;
}

std::vector<WindowExample> make_validation_set(const WindowCorpus& corpus, std::size_t count, std::uint64_t seed) {
    Engine rng = make_engine(seed, "data.validation");
    return sample_batch(corpus, count, rng);
}

}  // namespace synthcast::data
