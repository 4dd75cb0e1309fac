#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "synthcast/csv.hpp"
#include "synthcast/data/quantile_grid.hpp"
#include "synthcast/data/windows.hpp"

using namespace synthcast;
namespace data = synthcast::data;

namespace {

SurveillanceSeries make_series(std::string run, std::size_t n, double base = 1.0) {
    SurveillanceSeries s;
    s.id = run + "/tc";
    s.source_run = std::move(run);
    for (std::size_t i = 0; i < n; ++i) s.values.push_back(base + static_cast<double>(i));
    return s;
}

std::size_t brute_force_windows(std::size_t t, std::size_t c, std::size_t h) {
    std::size_t count = 0;
    for (std::size_t start = 0; start + c + h <= t; ++start) ++count;
    return count;
}

}  // namespace

TEST(QuantileGrid, ShapeAndOrdering) {
    EXPECT_EQ(data::kQuantileLevels.size(), 27u);
    for (std::size_t k = 0; k < data::kQuantileLevels.size(); ++k) {
        EXPECT_GT(data::kQuantileLevels[k], 0.0);
        EXPECT_LT(data::kQuantileLevels[k], 1.0);
        if (k > 0) EXPECT_GT(data::kQuantileLevels[k], data::kQuantileLevels[k - 1]);
        EXPECT_NEAR(data::kQuantileLevels[k] + data::kQuantileLevels[26 - k], 1.0, 1e-12);
    }
    for (std::size_t k = 0; k < data::kNumEvalLevels; ++k)
        EXPECT_EQ(data::kQuantileLevels[data::eval_level_indices()[k]], data::kEvalLevels[k]);
    EXPECT_THROW((void)data::level_index(data::kQuantileLevels, 0.123), std::out_of_range);
}

TEST(Windows, WorkedCountAndBoundaries) {
    EXPECT_EQ(data::enumerate_windows(100, 20, 4), 77u);
    EXPECT_EQ(data::enumerate_windows(23, 20, 4), 0u);
    EXPECT_EQ(data::enumerate_windows(24, 20, 4), 1u);
    static_assert(data::enumerate_windows(100, 20, 4) == 77);
}

TEST(Windows, MatchBruteForceUpToLength200) {
    Engine rng = make_engine(1);
    for (int rep = 0; rep < 1000; ++rep) {
        const auto t = uniform_int<std::size_t>(rng, 0, 200);
        const auto c = uniform_int<std::size_t>(rng, 1, 40);
        const auto h = uniform_int<std::size_t>(rng, 1, 10);
        ASSERT_EQ(data::enumerate_windows(t, c, h), brute_force_windows(t, c, h)) << t << " " << c << " " << h;
    }
}

TEST(Windows, NormalizationAndItsInverse) {
    const auto ex = data::make_window({1, 4, 2}, {8, 0});
    EXPECT_TRUE(ex.rescaled);
    EXPECT_EQ(ex.norm, 4.0);
    EXPECT_EQ(*std::max_element(ex.z_input.begin(), ex.z_input.end()), 1.0);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_DOUBLE_EQ(ex.z_input[i] * ex.norm, ex.input[i]);
    EXPECT_DOUBLE_EQ(ex.z_target[0], 2.0);
}

TEST(Windows, AllZeroContextIsNotRescaled) {
    const auto ex = data::make_window({0, 0, 0}, {5});
    EXPECT_FALSE(ex.rescaled);
    EXPECT_EQ(ex.z_input, ex.input);
    EXPECT_EQ(ex.z_target, ex.target);
}

TEST(Corpus, DropsWindowsTouchingNonFiniteValues) {
    auto s = make_series("a", 30);
    s.values[10] = std::nan("");
    data::WindowCorpus corpus({s}, 5, 2);
    // Windows covering index 10 start at 4..10; 24 total starts minus 7.
    EXPECT_EQ(corpus.total_windows(), 24u - 7u);
    for (std::size_t k = 0; k < corpus.window_count(0); ++k) {
        const auto w = corpus.window(0, k);
        for (double v : w.input) EXPECT_TRUE(std::isfinite(v));
        for (double v : w.target) EXPECT_TRUE(std::isfinite(v));
    }
}

TEST(Corpus, TwoStageSamplingIsUniformOverWindows) {
    data::WindowCorpus corpus({make_series("a", 10 + 23), make_series("b", 30 + 23)}, 20, 4);
    ASSERT_EQ(corpus.window_count(0), 10u);
    ASSERT_EQ(corpus.window_count(1), 30u);
    Engine rng = make_engine(2);
    int second = 0;
    for (int i = 0; i < 100'000; ++i) second += corpus.sample(rng).source == 1;
    EXPECT_NEAR(second / 1e5, 0.75, 0.01);
}

TEST(Corpus, BatchEdgeCases) {
    data::WindowCorpus corpus({make_series("a", 40)}, 20, 4);
    Engine rng = make_engine(3);
    EXPECT_TRUE(data::sample_batch(corpus, 0, rng).empty());
    data::WindowCorpus empty({make_series("a", 10)}, 20, 4);
    EXPECT_THROW((void)data::sample_batch(empty, 4, rng), std::invalid_argument);
}

TEST(Corpus, ManifestListsCounts) {
    data::WindowCorpus corpus({make_series("a", 30), make_series("b", 25)}, 20, 4);
    std::stringstream out;
    corpus.write_manifest(out);
    const auto table = csv::Table::parse(out, "manifest");
    ASSERT_EQ(table.rows(), 2u);
    EXPECT_EQ(table.at(0, table.column("windows")), "7");
    EXPECT_EQ(table.at(1, table.column("windows")), "2");
}

TEST(Perturb, DoublesBatchAndOnlyTouchesInputs) {
    data::WindowCorpus corpus({make_series("a", 60)}, 20, 4);
    Engine rng = make_engine(4);
    const auto batch = data::sample_batch(corpus, 16, rng);
    const auto doubled = data::perturb_duplicate(batch, rng);
    ASSERT_EQ(doubled.size(), 32u);
    for (std::size_t i = 0; i < batch.size(); ++i) {
        const auto& orig = doubled[i];
        const auto& copy = doubled[i + batch.size()];
        EXPECT_EQ(orig.input, batch[i].input);
        EXPECT_EQ(copy.target, orig.target);
        for (std::size_t t = 0; t < orig.input.size(); ++t) {
            const double r = copy.input[t] / orig.input[t];
            EXPECT_GE(r, 0.85);
            EXPECT_LE(r, 1.15);
        }
        // The copy is normalized by its own maximum.
        EXPECT_DOUBLE_EQ(*std::max_element(copy.z_input.begin(), copy.z_input.end()), 1.0);
    }
}

TEST(Split, NoRunOnBothSides) {
    std::vector<SurveillanceSeries> all;
    for (int r = 0; r < 10; ++r)
        for (int k = 0; k < 3; ++k) all.push_back(make_series("run" + std::to_string(r), 40, k));
    const auto split = data::split_by_source(all, 0.2, 5);
    std::set<std::string> train, val;
    for (const auto& s : split.train) train.insert(s.source_run);
    for (const auto& s : split.validation) val.insert(s.source_run);
    EXPECT_EQ(val.size(), 2u);
    EXPECT_EQ(train.size(), 8u);
    for (const auto& r : val) EXPECT_FALSE(train.contains(r));
}

TEST(Validation, FrozenForAFixedSeed) {
    data::WindowCorpus corpus({make_series("a", 80), make_series("b", 50)}, 20, 4);
    const auto a = data::make_validation_set(corpus, 64, 11);
    const auto b = data::make_validation_set(corpus, 64, 11);
    ASSERT_EQ(a.size(), 64u);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].source, b[i].source);
        EXPECT_EQ(a[i].start, b[i].start);
        EXPECT_EQ(a[i].z_input, b[i].z_input);
    }
}
