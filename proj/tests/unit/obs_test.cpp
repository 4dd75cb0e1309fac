#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "synthcast/obs/observation.hpp"

using namespace synthcast;
namespace obs = synthcast::obs;

namespace {

SurveillanceSeries ramp(std::size_t n, double scale = 1.0) {
    SurveillanceSeries s;
    s.id = "ramp";
    s.source_run = "run";
    for (std::size_t i = 0; i < n; ++i) s.values.push_back(scale * (1.0 + static_cast<double>(i % 17)));
    return s;
}

}  // namespace

TEST(ObsConfig, DefaultsAreValidAndBadRangesAreRejected) {
    obs::ObsConfig cfg;
    EXPECT_NO_THROW(cfg.validate());
    cfg.kappa = {3.5, 1.5};
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.outlier_probability = 1.5;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.tc_noised = 21;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(Interpolate, FullLengthIsIdentity) {
    const std::vector<double> y{3, 1, 4, 1, 5, 9, 2, 6};
    EXPECT_EQ(obs::interpolate_to_length(y, y.size()), y);
}

TEST(Interpolate, HandExample) {
    const std::vector<double> y{0, 2, 4};
    EXPECT_EQ(obs::interpolate_to_length(y, 2), (std::vector<double>{0, 4}));
    const auto x = obs::interpolate_to_length(std::vector<double>{0, 10}, 3);
    EXPECT_DOUBLE_EQ(x[1], 5.0);
}

TEST(Scale, StaysWithinRangeAndKeepsEndpoints) {
    Engine rng = make_engine(1);
    const auto y = ramp(150);
    for (int rep = 0; rep < 200; ++rep) {
        const auto x = obs::scale(y, rng);
        ASSERT_GE(x.size(), 52u);
        ASSERT_LE(x.size(), y.size());
        EXPECT_EQ(x.values.front(), y.values.front());
        EXPECT_EQ(x.values.back(), y.values.back());
        EXPECT_GE(*std::min_element(x.values.begin(), x.values.end()), 1.0);
        EXPECT_LE(*std::max_element(x.values.begin(), x.values.end()), 17.0);
    }
}

TEST(Scale, DrawsLengthsAcrossTheWholeInclusiveRange) {
    Engine rng = make_engine(2);
    const auto y = ramp(55);
    std::vector<int> seen(56, 0);
    for (int rep = 0; rep < 2000; ++rep) ++seen[obs::scale(y, rng).size()];
    for (std::size_t t = 52; t <= 55; ++t) EXPECT_GT(seen[t], 0) << t;
}

TEST(Scale, RejectsShortSeries) {
    Engine rng = make_engine(3);
    EXPECT_THROW((void)obs::scale(ramp(51), rng), std::invalid_argument);
}

TEST(Noise, ZerosStayZeroAndRatiosAreBounded) {
    Engine rng = make_engine(4);
    auto x = ramp(60);
    x.values[7] = 0.0;
    for (int rep = 0; rep < 500; ++rep) {
        const auto v = obs::add_noise(x, rng);
        EXPECT_EQ(v.values[7], 0.0);
        for (std::size_t t = 0; t < x.size(); ++t) {
            if (x.values[t] == 0.0) continue;
            const double r = v.values[t] / x.values[t];
            ASSERT_GE(r, 1.0 / 3.5);
            ASSERT_LE(r, 3.5);
        }
        EXPECT_TRUE(v.noised);
    }
}

TEST(Noise, FixedKappaHasTheUniformMean) {
    Engine rng = make_engine(5);
    SurveillanceSeries ones;
    ones.values.assign(100'000, 1.0);
    const auto v = obs::add_noise_with_kappa(ones, 2.0, rng);
    const double mean = std::accumulate(v.values.begin(), v.values.end(), 0.0) / 1e5;
    EXPECT_NEAR(mean, 1.25, 0.0125);
}

TEST(Outliers, ModifiesFiveToTenPositionsWithTheRightMultipliers) {
    Engine rng = make_engine(6);
    const auto v = ramp(80);
    for (int rep = 0; rep < 1000; ++rep) {
        const auto d = obs::add_outliers_detailed(v, rng);
        ASSERT_GE(d.positions.size(), 5u);
        ASSERT_LE(d.positions.size(), 10u);
        EXPECT_EQ(d.high_count, (d.positions.size() + 1) / 2);
        std::vector<bool> touched(v.size(), false);
        for (std::size_t k = 0; k < d.positions.size(); ++k) {
            const auto p = d.positions[k];
            ASSERT_FALSE(touched[p]) << "positions must be distinct";
            touched[p] = true;
            const double ratio = d.series.values[p] / v.values[p];
            if (k < d.high_count) {
                EXPECT_GE(ratio, 2.0);
                EXPECT_LE(ratio, 10.0);
            } else {
                EXPECT_GE(ratio, 0.0);
                EXPECT_LE(ratio, 0.05);
            }
        }
        for (std::size_t t = 0; t < v.size(); ++t)
            if (!touched[t]) ASSERT_EQ(d.series.values[t], v.values[t]);
    }
}

TEST(Outliers, ShortSeriesPassThrough) {
    Engine rng = make_engine(7);
    const auto v = ramp(9);
    const auto z = obs::add_outliers(v, rng);
    EXPECT_EQ(z.values, v.values);
    EXPECT_FALSE(z.outliered);
}

TEST(Stages, CommuteWithPositiveRescaling) {
    const auto x = ramp(70);
    const auto cx = ramp(70, 3.0);
    Engine a = make_engine(8), b = make_engine(8);
    const auto n1 = obs::add_noise(x, a);
    const auto n2 = obs::add_noise(cx, b);
    const auto o1 = obs::add_outliers(n1, a);
    const auto o2 = obs::add_outliers(n2, b);
    for (std::size_t t = 0; t < x.size(); ++t) EXPECT_NEAR(o2.values[t], 3.0 * o1.values[t], 1e-12 * o2.values[t] + 1e-300);
}

TEST(RealizeTc, TwentyCopiesHalfNoised) {
    Engine rng = make_engine(9);
    const auto y = ramp(120);
    const auto out = obs::realize_tc(y, rng);
    ASSERT_EQ(out.size(), 20u);
    std::size_t noised = 0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        noised += out[i].noised;
        EXPECT_EQ(out[i].noised, i < 10);
        EXPECT_EQ(out[i].realization, static_cast<std::int64_t>(i));
        EXPECT_EQ(out[i].source_run, "run");
    }
    EXPECT_EQ(noised, 10u);
}

TEST(RealizeTc, OutlierFrequencyIsAQuarter) {
    Engine rng = make_engine(10);
    const auto y = ramp(60);
    std::size_t hits = 0, total = 0;
    while (total < 10'000) {
        for (const auto& r : obs::realize_tc(y, rng)) {
            hits += r.outliered;
            ++total;
        }
    }
    EXPECT_NEAR(static_cast<double>(hits) / static_cast<double>(total), 0.25, 0.02);
}

TEST(RealizeTc, ShortInputYieldsNothing) {
    Engine rng = make_engine(11);
    EXPECT_TRUE(obs::realize_tc(ramp(40), rng).empty());
}

TEST(RealizeTc, DeterministicForASeed) {
    Engine a = make_engine(12), b = make_engine(12);
    const auto x = obs::realize_tc(ramp(100), a);
    const auto y = obs::realize_tc(ramp(100), b);
    for (std::size_t i = 0; i < x.size(); ++i) EXPECT_EQ(x[i].values, y[i].values);
}

TEST(RealizeVac, TwoPerSelectedVariantUpToTen) {
    Engine rng = make_engine(13);
    std::vector<SurveillanceSeries> one{ramp(80)};
    one[0].kind = SeriesKind::vac;
    const auto a = obs::realize_vac(one, rng);
    ASSERT_EQ(a.size(), 2u);
    EXPECT_FALSE(a[0].noised);
    EXPECT_TRUE(a[1].noised);

    std::vector<SurveillanceSeries> many;
    for (int v = 0; v < 15; ++v) {
        auto s = ramp(80, 1.0 + v);
        s.kind = SeriesKind::vac;
        s.variant_id = v;
        many.push_back(s);
    }
    const auto b = obs::realize_vac(many, rng);
    EXPECT_EQ(b.size(), 20u);
    std::set<std::int64_t> variants;
    for (const auto& s : b) variants.insert(s.variant_id);
    EXPECT_EQ(variants.size(), 10u);

    std::vector<SurveillanceSeries> short_only{ramp(30)};
    EXPECT_TRUE(obs::realize_vac(short_only, rng).empty());
}

TEST(RealizeVac, SelectionFavoursLargeVariants) {
    Engine rng = make_engine(14);
    obs::ObsConfig cfg;
    cfg.vac_max_variants = 1;
    std::vector<SurveillanceSeries> vacs{ramp(60, 1.0), ramp(60, 9.0)};
    vacs[0].variant_id = 0;
    vacs[1].variant_id = 1;
    int big = 0;
    for (int rep = 0; rep < 4000; ++rep) big += obs::realize_vac(vacs, rng, cfg).front().variant_id == 1;
    EXPECT_NEAR(big / 4000.0, 0.9, 0.02);
}

TEST(Realizations, StayNonnegative) {
    Engine rng = make_engine(15);
    auto y = ramp(90);
    y.values[3] = 0.0;
    for (const auto& r : obs::realize_tc(y, rng))
        for (double v : r.values) EXPECT_GE(v, 0.0);
}
