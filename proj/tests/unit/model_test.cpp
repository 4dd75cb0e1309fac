#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <sstream>

#include "synthcast/data/quantile_grid.hpp"
#include "synthcast/model/checkpoint.hpp"
#include "synthcast/model/grad_check.hpp"
#include "synthcast/model/quantiles.hpp"
#include "synthcast/model/train.hpp"
#include "synthcast/model/transformer.hpp"

using namespace synthcast;
namespace model = synthcast::model;

namespace {

model::ModelConfig tiny() {
    model::ModelConfig c;
    c.d_model = 8;
    c.n_heads = 2;
    c.d_ff = 16;
    return c;
}

std::vector<double> random_input(Engine& rng, std::size_t n) {
    std::vector<double> z(n);
    for (double& v : z) v = uniform(rng);
    return z;
}

data::WindowCorpus sine_corpus() {
    std::vector<SurveillanceSeries> series;
    for (int k = 0; k < 6; ++k) {
        SurveillanceSeries s;
        s.source_run = "r" + std::to_string(k);
        for (int t = 0; t < 120; ++t) s.values.push_back(50.0 + 40.0 * std::sin(0.2 * t + k));
        series.push_back(s);
    }
    return data::WindowCorpus(series, 20, 4);
}

}  // namespace

TEST(Config, Validation) {
    model::ModelConfig c;
    EXPECT_NO_THROW(c.validate());
    c.n_heads = 3;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = {};
    c.n_layers = 0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    EXPECT_EQ(model::ModelConfig::desk().d_model, 32u);

    model::TrainConfig t;
    EXPECT_NO_THROW(t.validate());
    t.lr_end = 1e-3;
    EXPECT_THROW(t.validate(), std::invalid_argument);
    t = {};
    t.ema_alpha = 1.0;
    EXPECT_THROW(t.validate(), std::invalid_argument);
    t = {};
    t.updates = 0;
    EXPECT_THROW(t.validate(), std::invalid_argument);
}

TEST(Schedule, CosineEndpointsAndMidpoint) {
    model::TrainConfig t;
    EXPECT_DOUBLE_EQ(model::cosine_lr(t, 0), 5e-4);
    EXPECT_NEAR(model::cosine_lr(t, t.updates), 5e-5, 1e-18);
    EXPECT_NEAR(model::cosine_lr(t, t.updates / 2), 2.75e-4, 1e-15);
    const double u = 300;
    EXPECT_NEAR(model::cosine_lr(t, 300),
                5e-5 + 0.5 * (5e-4 - 5e-5) * (1 + std::cos(std::numbers::pi * u / 2000.0)), 1e-18);
}

TEST(Quantiles, SoftplusIsStable) {
    EXPECT_DOUBLE_EQ(model::softplus(0.0), std::log(2.0));
    EXPECT_DOUBLE_EQ(model::softplus(800.0), 800.0);
    EXPECT_GT(model::softplus(-50.0), 0.0);
    EXPECT_LT(model::softplus(-50.0), 1e-20);
}

TEST(Quantiles, ZeroRawGivesLog2Steps) {
    const std::vector<double> raw(2 * 27, 0.0);
    const auto q = model::to_quantiles(raw, 2, 27);
    for (std::size_t h = 0; h < 2; ++h)
        for (std::size_t k = 0; k < 27; ++k) EXPECT_NEAR(q[h * 27 + k], static_cast<double>(k) * std::log(2.0), 1e-12);
}

TEST(Quantiles, VeryNegativeIncrementsCollapse) {
    std::vector<double> raw(27, -50.0);
    raw[0] = 1.5;
    const auto q = model::to_quantiles(raw, 1, 27);
    for (double v : q) EXPECT_NEAR(v, 1.5, 1e-12);
}

TEST(Quantiles, RandomRawIsMonotone) {
    Engine rng = make_engine(1);
    for (int rep = 0; rep < 1000; ++rep) {
        std::vector<double> raw(4 * 27);
        for (double& v : raw) v = uniform(rng, -30.0, 30.0);
        const auto q = model::to_quantiles(raw, 4, 27);
        for (std::size_t h = 0; h < 4; ++h)
            for (std::size_t k = 1; k < 27; ++k) ASSERT_GE(q[h * 27 + k], q[h * 27 + k - 1]);
    }
}

TEST(Pinball, HandValues) {
    EXPECT_DOUBLE_EQ(model::pinball(0.9, 1.0), 0.9);
    EXPECT_NEAR(model::pinball(0.9, -1.0), 0.1, 1e-15);
    EXPECT_DOUBLE_EQ(model::pinball(0.5, -3.0), 1.5);
    const std::vector<double> levels{0.1, 0.5, 0.9};
    const std::vector<double> preds{1, 1, 1};
    const std::vector<double> targets{1};
    EXPECT_EQ(model::pinball_loss(preds, targets, levels), 0.0);
    const std::vector<double> off{2};
    EXPECT_GT(model::pinball_loss(preds, off, levels), 0.0);
}

TEST(Transformer, OutputShapeAtDefaults) {
    const model::QuantileTransformer m(model::ModelConfig::desk());
    const auto p = m.initial_parameters(1);
    Engine rng = make_engine(2);
    const auto out = m.forward(p, random_input(rng, 20));
    EXPECT_EQ(out.size(), 4u * 27u);
    EXPECT_EQ(m.parameter_count(), m.layout().total());
}

TEST(Transformer, PureFunction) {
    const model::QuantileTransformer m(tiny());
    const auto p = m.initial_parameters(3);
    Engine rng = make_engine(4);
    const auto z = random_input(rng, 20);
    EXPECT_EQ(m.forward(p, z), m.forward(p, z));
}

TEST(Transformer, ReadoutOnlySeesTheLastPosition) {
    const model::QuantileTransformer m(tiny());
    const auto p = m.initial_parameters(5);
    Engine rng = make_engine(6);
    auto hidden = m.encode(p, random_input(rng, 20));
    const auto before = m.readout(p, hidden);
    const std::size_t d = m.config().d_model;
    for (std::size_t i = 0; i < hidden.size() - d; ++i) hidden[i] += uniform(rng, -5.0, 5.0);
    EXPECT_EQ(m.readout(p, hidden), before);
    hidden.back() += 1.0;
    EXPECT_NE(m.readout(p, hidden), before);
}

TEST(Transformer, RejectsShapeMismatches) {
    const model::QuantileTransformer m(tiny());
    const auto p = m.initial_parameters(7);
    EXPECT_THROW((void)m.forward(p, std::vector<double>(19, 0.0)), std::invalid_argument);
    EXPECT_THROW((void)m.forward(std::vector<double>(3, 0.0), std::vector<double>(20, 0.0)), std::invalid_argument);
    std::vector<double> bad(20, 0.0);
    bad[4] = std::nan("");
    EXPECT_THROW((void)m.forward(p, bad), std::invalid_argument);
}

TEST(Transformer, LossAgreesWithItsGradientCall) {
    const model::QuantileTransformer m(tiny());
    const auto p = m.initial_parameters(8);
    auto corpus = sine_corpus();
    Engine rng = make_engine(9);
    const auto batch = data::sample_batch(corpus, 5, rng);
    std::vector<double> g(p.size());
    EXPECT_DOUBLE_EQ(m.loss(p, batch, data::kQuantileLevels), m.loss_and_gradient(p, batch, data::kQuantileLevels, g));
}

TEST(GradCheck, SmallModelPassesForTwoSeeds) {
    auto c = tiny();
    const auto a = model::grad_check(c, 1, 2);
    const auto b = model::grad_check(c, 2, 2);
    EXPECT_TRUE(a.passed()) << a.max_rel_error << " at " << a.worst_parameter;
    EXPECT_EQ(a.passed(), b.passed());
    EXPECT_EQ(a.checked, model::QuantileTransformer(c).parameter_count());
    EXPECT_FALSE(a.groups.empty());
}

TEST(Ema, OneStepAndGeometricConvergence) {
    std::vector<double> ema{1.0, -2.0};
    const std::vector<double> theta{3.0, 2.0};
    model::ema_update(ema, theta, 0.98);
    EXPECT_DOUBLE_EQ(ema[0], 0.98 * 1.0 + 0.02 * 3.0);
    EXPECT_DOUBLE_EQ(ema[1], 0.98 * -2.0 + 0.02 * 2.0);
    double gap = theta[0] - ema[0];
    for (int k = 0; k < 50; ++k) {
        model::ema_update(ema, theta, 0.98);
        const double next = theta[0] - ema[0];
        EXPECT_NEAR(next, 0.98 * gap, 1e-12);
        gap = next;
    }
}

TEST(Checkpoint, RoundTripsBitExactly) {
    const model::QuantileTransformer m(tiny());
    model::Checkpoint c{tiny(), m.initial_parameters(10), 1234, 0.125, model::kCheckpointVersion};
    c.params[3] = -0.0;
    c.params[4] = 1e-310;
    std::stringstream buf;
    model::write_checkpoint(buf, c);
    const auto back = model::read_checkpoint(buf);
    EXPECT_EQ(back.config, c.config);
    EXPECT_EQ(back.update_count, 1234u);
    EXPECT_EQ(back.val_loss, 0.125);
    ASSERT_EQ(back.params.size(), c.params.size());
    EXPECT_EQ(std::memcmp(back.params.data(), c.params.data(), c.params.size() * sizeof(double)), 0);
}

TEST(Checkpoint, DetectsCorruption) {
    const model::QuantileTransformer m(tiny());
    const model::Checkpoint c{tiny(), m.initial_parameters(11), 1, 0.5, model::kCheckpointVersion};
    auto bytes = model::serialize_checkpoint(c);
    bytes[100] ^= std::byte{0x01};
    try {
        (void)model::deserialize_checkpoint(bytes);
        FAIL() << "corruption not detected";
    } catch (const model::CheckpointError& e) {
        EXPECT_EQ(e.kind(), model::CheckpointError::Kind::checksum);
    }
    auto bad_magic = model::serialize_checkpoint(c);
    bad_magic[0] = std::byte{'X'};
    try {
        (void)model::deserialize_checkpoint(bad_magic);
        FAIL() << "bad magic not detected";
    } catch (const model::CheckpointError& e) {
        EXPECT_EQ(e.kind(), model::CheckpointError::Kind::format);
    }
    EXPECT_THROW((void)model::load_checkpoint("/nonexistent/model.ckpt"), model::CheckpointError);
}

TEST(Train, ReducesLossAndIsDeterministic) {
    const auto corpus = sine_corpus();
    model::TrainConfig t;
    t.updates = 60;
    t.batch_size = 8;
    t.validation_every = 20;
    t.lr_start = 3e-3;
    t.lr_end = 3e-4;
    t.ema_alpha = 0.9;
    t.seed = 17;
    const auto validation = data::make_validation_set(corpus, 64, 1);
    const auto a = model::train(corpus, validation, tiny(), t);
    const auto b = model::train(corpus, validation, tiny(), t);
    EXPECT_EQ(a.status, model::TrainStatus::completed);
    EXPECT_LT(a.best.val_loss, a.initial_val_loss);
    EXPECT_EQ(a.best.params, b.best.params);
    EXPECT_EQ(a.log.size(), 4u);
    EXPECT_EQ(a.log.front().update, 0u);
    EXPECT_EQ(a.log.back().update, 60u);

    std::ostringstream csv;
    model::write_train_log(csv, a.log);
    EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')), "update,lr,train_loss,val_loss,ema_val_loss");
}

TEST(Train, ContextMeanBaseline) {
    const auto ex = data::make_window({1, 1, 1}, {1, 1});
    const std::vector<data::WindowExample> v{ex};
    EXPECT_EQ(model::context_mean_loss(v, data::kQuantileLevels), 0.0);
}
