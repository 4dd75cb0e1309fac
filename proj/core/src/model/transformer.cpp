#include "synthcast/model/transformer.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "synthcast/model/quantiles.hpp"
#include "synthcast/rng.hpp"

namespace synthcast::model {

ParamLayout::ParamLayout(const ModelConfig& cfg) {
    cfg.validate();
    using Init = TensorSpec::Init;
    const std::size_t d = cfg.d_model;
    w_embed = add("embed.weight", "embedding", 1, d, Init::fan_in);
    b_embed = add("embed.bias", "embedding", 1, d, Init::zeros);
    position = add("embed.position", "embedding", cfg.context, d, Init::position);
    for (std::size_t l = 0; l < cfg.n_layers; ++l) {
        const std::string p = "layer" + std::to_string(l);
        Layer ly{};
        ly.ln1_gain = add(p + ".norm1.gain", p + ".norm", 1, d, Init::ones);
        ly.ln1_bias = add(p + ".norm1.bias", p + ".norm", 1, d, Init::zeros);
        ly.w_qkv = add(p + ".attn.qkv.weight", p + ".attention", d, 3 * d, Init::fan_in);
        ly.b_qkv = add(p + ".attn.qkv.bias", p + ".attention", 1, 3 * d, Init::zeros);
        ly.w_o = add(p + ".attn.out.weight", p + ".attention", d, d, Init::fan_in);
        ly.b_o = add(p + ".attn.out.bias", p + ".attention", 1, d, Init::zeros);
        ly.ln2_gain = add(p + ".norm2.gain", p + ".norm", 1, d, Init::ones);
        ly.ln2_bias = add(p + ".norm2.bias", p + ".norm", 1, d, Init::zeros);
        ly.w_1 = add(p + ".ff.in.weight", p + ".feedforward", d, cfg.d_ff, Init::fan_in);
        ly.b_1 = add(p + ".ff.in.bias", p + ".feedforward", 1, cfg.d_ff, Init::zeros);
        ly.w_2 = add(p + ".ff.out.weight", p + ".feedforward", cfg.d_ff, d, Init::fan_in);
        ly.b_2 = add(p + ".ff.out.bias", p + ".feedforward", 1, d, Init::zeros);
        layers.push_back(ly);
    }
    lnf_gain = add("final_norm.gain", "readout", 1, d, Init::ones);
    lnf_bias = add("final_norm.bias", "readout", 1, d, Init::zeros);
    w_out = add("readout.weight", "readout", d, cfg.outputs(), Init::fan_in);
    b_out = add("readout.bias", "readout", cfg.horizon, cfg.n_quantiles, Init::readout_bias);
}

std::size_t ParamLayout::add(std::string name, std::string group, std::size_t rows, std::size_t cols,
                             TensorSpec::Init init) {
    const std::size_t offset = total_;
    tensors_.push_back({std::move(name), std::move(group), rows, cols, offset, init});
    total_ += rows * cols;
    return offset;
}

namespace {

using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RowVec = Eigen::Matrix<double, 1, Eigen::Dynamic>;
using ColVec = Eigen::VectorXd;
using CMat = Eigen::Map<const Mat>;
using CRow = Eigen::Map<const RowVec>;
using MMat = Eigen::Map<Mat>;
using MRow = Eigen::Map<RowVec>;

constexpr double kNormEps = 1e-5;
constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

double gelu(double x) { return 0.5 * x * (1.0 + std::erf(x * kInvSqrt2)); }
double gelu_grad(double x) {
    return 0.5 * (1.0 + std::erf(x * kInvSqrt2)) + x * std::exp(-0.5 * x * x) * kInvSqrt2Pi;
}

struct NormCache {
    Mat xhat;
    ColVec rstd;
};

Mat layer_norm(const Mat& x, const CRow& gain, const CRow& bias, NormCache& cache) {
    const auto rows = x.rows();
    cache.xhat.resize(rows, x.cols());
    cache.rstd.resize(rows);
    Mat out(rows, x.cols());
    for (Eigen::Index r = 0; r < rows; ++r) {
        const double mu = x.row(r).mean();
        const RowVec centered = x.row(r).array() - mu;
        const double var = centered.squaredNorm() / static_cast<double>(x.cols());
        const double rs = 1.0 / std::sqrt(var + kNormEps);
        cache.rstd(r) = rs;
        cache.xhat.row(r) = centered * rs;
        out.row(r) = cache.xhat.row(r).cwiseProduct(gain) + bias;
    }
    return out;
}

Mat layer_norm_backward(const Mat& d_out, const NormCache& cache, const CRow& gain, MRow d_gain, MRow d_bias) {
    Mat dx(d_out.rows(), d_out.cols());
    const double n = static_cast<double>(d_out.cols());
    for (Eigen::Index r = 0; r < d_out.rows(); ++r) {
        const RowVec dxhat = d_out.row(r).cwiseProduct(gain);
        d_gain += d_out.row(r).cwiseProduct(cache.xhat.row(r));
        d_bias += d_out.row(r);
        const double m1 = dxhat.sum() / n;
        const double m2 = dxhat.cwiseProduct(cache.xhat.row(r)).sum() / n;
        dx.row(r) = cache.rstd(r) * (dxhat.array() - m1 - cache.xhat.row(r).array() * m2).matrix();
    }
    return dx;
}

struct LayerCache {
    Mat x_in;
    NormCache norm1;
    Mat h1;
    Mat qkv;
    std::vector<Mat> probs;
    Mat attn;
    Mat x_mid;
    NormCache norm2;
    Mat h2;
    Mat pre;
    Mat act;
};

struct Trace {
    std::vector<LayerCache> layers;
    Mat x_out;
    NormCache final_norm;
    Mat h_final;  // 1 x d
};

class Engine {
public:
    Engine(const ModelConfig& cfg, const ParamLayout& layout, const double* params)
        : cfg_(cfg), L_(layout), p_(params) {}

    void encode(std::span<const double> z, Trace& t) const {
        const auto C = static_cast<Eigen::Index>(cfg_.context);
        const auto d = static_cast<Eigen::Index>(cfg_.d_model);
        const auto dh = static_cast<Eigen::Index>(cfg_.head_dim());
        const double scale = 1.0 / std::sqrt(static_cast<double>(dh));

        const CRow w_emb(p_ + L_.w_embed, d);
        const CRow b_emb(p_ + L_.b_embed, d);
        const CMat pos(p_ + L_.position, C, d);
        Mat x(C, d);
        for (Eigen::Index i = 0; i < C; ++i) x.row(i) = z[static_cast<std::size_t>(i)] * w_emb + b_emb + pos.row(i);

        t.layers.resize(cfg_.n_layers);
        for (std::size_t l = 0; l < cfg_.n_layers; ++l) {
            const auto& ly = L_.layers[l];
            LayerCache& c = t.layers[l];
            c.x_in = x;
            c.h1 = layer_norm(x, row(ly.ln1_gain, d), row(ly.ln1_bias, d), c.norm1);
            c.qkv = c.h1 * mat(ly.w_qkv, d, 3 * d);
            c.qkv.rowwise() += row(ly.b_qkv, 3 * d);

            c.attn.resize(C, d);
            c.probs.resize(cfg_.n_heads);
            for (std::size_t k = 0; k < cfg_.n_heads; ++k) {
                const auto off = static_cast<Eigen::Index>(k) * dh;
                Mat s = c.qkv.middleCols(off, dh) * c.qkv.middleCols(d + off, dh).transpose() * scale;
                for (Eigen::Index r = 0; r < C; ++r) {
                    const double m = s.row(r).maxCoeff();
                    s.row(r) = (s.row(r).array() - m).exp().matrix();
                    s.row(r) /= s.row(r).sum();
                }
                c.attn.middleCols(off, dh) = s * c.qkv.middleCols(2 * d + off, dh);
                c.probs[k] = std::move(s);
            }
            c.x_mid = x + c.attn * mat(ly.w_o, d, d);
            c.x_mid.rowwise() += row(ly.b_o, d);

            c.h2 = layer_norm(c.x_mid, row(ly.ln2_gain, d), row(ly.ln2_bias, d), c.norm2);
            const auto ff = static_cast<Eigen::Index>(cfg_.d_ff);
            c.pre = c.h2 * mat(ly.w_1, d, ff);
            c.pre.rowwise() += row(ly.b_1, ff);
            c.act = c.pre.unaryExpr(&gelu);
            x = c.x_mid + c.act * mat(ly.w_2, ff, d);
            x.rowwise() += row(ly.b_2, d);
        }
        t.x_out = std::move(x);
    }

    RowVec readout(const Mat& hidden, Trace* t) const {
        const auto d = static_cast<Eigen::Index>(cfg_.d_model);
        const auto out = static_cast<Eigen::Index>(cfg_.outputs());
        NormCache local;
        NormCache& nc = t ? t->final_norm : local;
        const Mat last = hidden.bottomRows(1);
        Mat hf = layer_norm(last, row(L_.lnf_gain, d), row(L_.lnf_bias, d), nc);
        RowVec raw = hf * mat(L_.w_out, d, out) + row(L_.b_out, out);
        if (t) t->h_final = std::move(hf);
        return raw;
    }

    void backward(std::span<const double> z, const Trace& t, const RowVec& d_raw, double* g) const {
        const auto C = static_cast<Eigen::Index>(cfg_.context);
        const auto d = static_cast<Eigen::Index>(cfg_.d_model);
        const auto dh = static_cast<Eigen::Index>(cfg_.head_dim());
        const auto ff = static_cast<Eigen::Index>(cfg_.d_ff);
        const auto out = static_cast<Eigen::Index>(cfg_.outputs());
        const double scale = 1.0 / std::sqrt(static_cast<double>(dh));

        gmat(g, L_.w_out, d, out).noalias() += t.h_final.transpose() * d_raw;
        grow(g, L_.b_out, out) += d_raw;
        const Mat d_hf = d_raw * mat(L_.w_out, d, out).transpose();
        const Mat d_last = layer_norm_backward(d_hf, t.final_norm, row(L_.lnf_gain, d), grow(g, L_.lnf_gain, d),
                                               grow(g, L_.lnf_bias, d));
        Mat dx = Mat::Zero(C, d);
        dx.row(C - 1) = d_last.row(0);

        for (std::size_t l = cfg_.n_layers; l-- > 0;) {
            const auto& ly = L_.layers[l];
            const LayerCache& c = t.layers[l];

            // Feedforward sublayer: x_out = x_mid + gelu(h2 W1 + b1) W2 + b2.
            Mat d_mid = dx;
            gmat(g, ly.w_2, ff, d).noalias() += c.act.transpose() * dx;
            grow(g, ly.b_2, d) += dx.colwise().sum();
            Mat d_pre = (dx * mat(ly.w_2, ff, d).transpose()).cwiseProduct(c.pre.unaryExpr(&gelu_grad));
            gmat(g, ly.w_1, d, ff).noalias() += c.h2.transpose() * d_pre;
            grow(g, ly.b_1, ff) += d_pre.colwise().sum();
            const Mat d_h2 = d_pre * mat(ly.w_1, d, ff).transpose();
            d_mid += layer_norm_backward(d_h2, c.norm2, row(ly.ln2_gain, d), grow(g, ly.ln2_gain, d),
                                         grow(g, ly.ln2_bias, d));

            // Attention sublayer: x_mid = x_in + attn Wo + bo.
            Mat d_in = d_mid;
            gmat(g, ly.w_o, d, d).noalias() += c.attn.transpose() * d_mid;
            grow(g, ly.b_o, d) += d_mid.colwise().sum();
            const Mat d_attn = d_mid * mat(ly.w_o, d, d).transpose();

            Mat d_qkv(C, 3 * d);
            for (std::size_t k = 0; k < cfg_.n_heads; ++k) {
                const auto off = static_cast<Eigen::Index>(k) * dh;
                const Mat& P = c.probs[k];
                const auto Q = c.qkv.middleCols(off, dh);
                const auto K = c.qkv.middleCols(d + off, dh);
                const auto V = c.qkv.middleCols(2 * d + off, dh);
                const Mat dO = d_attn.middleCols(off, dh);
                const Mat dP = dO * V.transpose();
                d_qkv.middleCols(2 * d + off, dh) = P.transpose() * dO;
                Mat dS(C, C);
                for (Eigen::Index r = 0; r < C; ++r) {
                    const double dot = dP.row(r).dot(P.row(r));
                    dS.row(r) = P.row(r).cwiseProduct((dP.row(r).array() - dot).matrix());
                }
                dS *= scale;
                d_qkv.middleCols(off, dh) = dS * K;
                d_qkv.middleCols(d + off, dh) = dS.transpose() * Q;
            }
            gmat(g, ly.w_qkv, d, 3 * d).noalias() += c.h1.transpose() * d_qkv;
            grow(g, ly.b_qkv, 3 * d) += d_qkv.colwise().sum();
            const Mat d_h1 = d_qkv * mat(ly.w_qkv, d, 3 * d).transpose();
            d_in += layer_norm_backward(d_h1, c.norm1, row(ly.ln1_gain, d), grow(g, ly.ln1_gain, d),
                                        grow(g, ly.ln1_bias, d));
            dx = std::move(d_in);
        }

        gmat(g, L_.position, C, d) += dx;
        auto d_w_emb = grow(g, L_.w_embed, d);
        for (Eigen::Index i = 0; i < C; ++i) d_w_emb += z[static_cast<std::size_t>(i)] * dx.row(i);
        grow(g, L_.b_embed, d) += dx.colwise().sum();
    }

private:
    [[nodiscard]] CRow row(std::size_t offset, Eigen::Index n) const { return CRow(p_ + offset, n); }
    [[nodiscard]] CMat mat(std::size_t offset, Eigen::Index r, Eigen::Index c) const { return CMat(p_ + offset, r, c); }
    static MRow grow(double* g, std::size_t offset, Eigen::Index n) { return MRow(g + offset, n); }
    static MMat gmat(double* g, std::size_t offset, Eigen::Index r, Eigen::Index c) { return MMat(g + offset, r, c); }

    const ModelConfig& cfg_;
    const ParamLayout& L_;
    const double* p_;
};

}  // namespace

QuantileTransformer::QuantileTransformer(ModelConfig cfg) : cfg_(cfg), layout_(cfg) {}

void QuantileTransformer::check_params(std::span<const double> params) const {
    if (params.size() != layout_.total())
        throw std::invalid_argument("QuantileTransformer: expected " + std::to_string(layout_.total()) +
                                    " parameters, got " + std::to_string(params.size()));
}

void QuantileTransformer::check_input(std::span<const double> z_input) const {
    if (z_input.size() != cfg_.context)
        throw std::invalid_argument("QuantileTransformer: context length " + std::to_string(z_input.size()) +
                                    " does not match configured " + std::to_string(cfg_.context));
    for (double v : z_input)
        if (!std::isfinite(v)) throw std::invalid_argument("QuantileTransformer: non-finite input");
}

std::vector<double> QuantileTransformer::initial_parameters(std::uint64_t seed) const {
    using Init = TensorSpec::Init;
    std::vector<double> p(layout_.total(), 0.0);
    synthcast::Engine rng = make_engine(seed, "model.init");
    for (const auto& t : layout_.tensors()) {
        double* first = p.data() + t.offset;
        switch (t.init) {
            case Init::zeros: break;
            case Init::ones: std::fill(first, first + t.size(), 1.0); break;
            case Init::fan_in: {
                const double bound = 1.0 / std::sqrt(static_cast<double>(t.rows));
                for (std::size_t i = 0; i < t.size(); ++i) first[i] = uniform(rng, -bound, bound);
                break;
            }
            case Init::position:
                for (std::size_t i = 0; i < t.size(); ++i) first[i] = uniform(rng, -0.1, 0.1);
                break;
            case Init::readout_bias:
                // Narrow initial spread: increments start at softplus(-3) ~ 0.05.
                for (std::size_t h = 0; h < t.rows; ++h)
                    for (std::size_t k = 1; k < t.cols; ++k) first[h * t.cols + k] = -3.0;
                break;
        }
    }
    return p;
}

std::vector<double> QuantileTransformer::encode(std::span<const double> params, std::span<const double> z_input) const {
    check_params(params);
    check_input(z_input);
    Trace t;
    Engine(cfg_, layout_, params.data()).encode(z_input, t);
    return {t.x_out.data(), t.x_out.data() + t.x_out.size()};
}

std::vector<double> QuantileTransformer::readout(std::span<const double> params, std::span<const double> hidden) const {
    check_params(params);
    if (hidden.size() != cfg_.context * cfg_.d_model)
        throw std::invalid_argument("QuantileTransformer::readout: hidden state shape mismatch");
    const Mat h = CMat(hidden.data(), static_cast<Eigen::Index>(cfg_.context), static_cast<Eigen::Index>(cfg_.d_model));
    const RowVec raw = Engine(cfg_, layout_, params.data()).readout(h, nullptr);
    return {raw.data(), raw.data() + raw.size()};
}

std::vector<double> QuantileTransformer::forward(std::span<const double> params, std::span<const double> z_input) const {
    check_params(params);
    check_input(z_input);
    Trace t;
    Engine engine(cfg_, layout_, params.data());
    engine.encode(z_input, t);
    const RowVec raw = engine.readout(t.x_out, nullptr);
    return {raw.data(), raw.data() + raw.size()};
}

std::vector<double> QuantileTransformer::predict_quantiles(std::span<const double> params,
                                                           std::span<const double> z_input) const {
    return to_quantiles(forward(params, z_input), cfg_.horizon, cfg_.n_quantiles);
}

double QuantileTransformer::loss(std::span<const double> params, std::span<const data::WindowExample> batch,
                                 std::span<const double> levels) const {
    check_params(params);
    if (levels.size() != cfg_.n_quantiles) throw std::invalid_argument("loss: level count mismatch");
    if (batch.empty()) throw std::invalid_argument("loss: empty batch");
    double total = 0.0;
    for (const auto& ex : batch) {
        const auto q = predict_quantiles(params, ex.z_input);
        for (std::size_t h = 0; h < cfg_.horizon; ++h)
            for (std::size_t k = 0; k < cfg_.n_quantiles; ++k)
                total += pinball(levels[k], ex.z_target[h] - q[h * cfg_.n_quantiles + k]);
    }
    return total / static_cast<double>(batch.size() * cfg_.outputs());
}

double QuantileTransformer::loss_and_gradient(std::span<const double> params, std::span<const data::WindowExample> batch,
                                              std::span<const double> levels, std::span<double> grad) const {
    check_params(params);
    if (grad.size() != params.size()) throw std::invalid_argument("loss_and_gradient: gradient size mismatch");
    if (levels.size() != cfg_.n_quantiles) throw std::invalid_argument("loss_and_gradient: level count mismatch");
    if (batch.empty()) throw std::invalid_argument("loss_and_gradient: empty batch");
    std::fill(grad.begin(), grad.end(), 0.0);

    const std::size_t H = cfg_.horizon;
    const std::size_t Q = cfg_.n_quantiles;
    const double norm = 1.0 / static_cast<double>(batch.size() * cfg_.outputs());
    Engine engine(cfg_, layout_, params.data());
    Trace t;
    std::vector<double> d_q(H * Q);
    RowVec d_raw(static_cast<Eigen::Index>(H * Q));
    double total = 0.0;
    for (const auto& ex : batch) {
        check_input(ex.z_input);
        if (ex.z_target.size() != H) throw std::invalid_argument("loss_and_gradient: target length mismatch");
        engine.encode(ex.z_input, t);
        const RowVec raw = engine.readout(t.x_out, &t);
        const std::span<const double> raw_span(raw.data(), static_cast<std::size_t>(raw.size()));
        const auto q = to_quantiles(raw_span, H, Q);
        for (std::size_t h = 0; h < H; ++h) {
            for (std::size_t k = 0; k < Q; ++k) {
                const double r = ex.z_target[h] - q[h * Q + k];
                total += pinball(levels[k], r);
                d_q[h * Q + k] = (r >= 0.0 ? -levels[k] : 1.0 - levels[k]) * norm;
            }
        }
        to_quantiles_backward(raw_span, d_q, H, Q, std::span<double>(d_raw.data(), H * Q));
        engine.backward(ex.z_input, t, d_raw, grad.data());
    }
    return total * norm;
}

}  // namespace synthcast::model
