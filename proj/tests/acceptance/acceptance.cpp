// Acceptance checks: one PASS/FAIL line per criterion.
// Usage: acceptance [workdir]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "synthcast/data/quantile_grid.hpp"
#include "synthcast/data/windows.hpp"
#include "synthcast/forecast/forecaster.hpp"
#include "synthcast/model/checkpoint.hpp"
#include "synthcast/model/grad_check.hpp"
#include "synthcast/model/quantiles.hpp"
#include "synthcast/model/transformer.hpp"
#include "synthcast/obs/observation.hpp"
#include "synthcast/rng.hpp"
#include "synthcast/score/bootstrap.hpp"
#include "synthcast/score/metrics.hpp"
#include "synthcast/sim/lhs.hpp"
#include "synthcast/sim/simulator.hpp"

namespace fs = std::filesystem;
using namespace synthcast;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt_double(double v) {
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
}

std::string read_bytes(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// ---------------------------------------------------------------- pipeline runs

class PipelineRuns {
public:
    explicit PipelineRuns(fs::path root) : root_(std::move(root)) {}

    const std::optional<fs::path>& first() { return run(first_, "run_a"); }
    const std::optional<fs::path>& second() { return run(second_, "run_b"); }
    [[nodiscard]] const std::string& failure() const { return failure_; }

private:
    const std::optional<fs::path>& run(std::optional<std::optional<fs::path>>& slot, const std::string& name) {
        if (slot) return *slot;
        const fs::path dir = root_ / name;
        fs::remove_all(dir);
        fs::create_directories(root_);
        const std::string cmd = std::string("\"") + SYNTHCAST_CLI + "\" --desk -q --io.workdir \"" + dir.string() +
                                "\" pipeline > \"" + (root_ / (name + ".log")).string() + "\" 2>&1";
        const int rc = std::system(cmd.c_str());
        if (rc != 0) {
            failure_ = name + " exited with status " + std::to_string(rc);
            slot.emplace(std::nullopt);
        } else {
            slot.emplace(dir);
        }
        return *slot;
    }

    fs::path root_;
    std::optional<std::optional<fs::path>> first_, second_;
    std::string failure_;
};

// ---------------------------------------------------------------- oracles

// CDF of the distribution whose quantile function interpolates (levels, values)
// linearly and holds the extreme values beyond the grid.
double piecewise_cdf(const std::vector<double>& levels, const std::vector<double>& values, double x) {
    if (x < values.front()) return 0.0;
    if (x >= values.back()) return 1.0;
    const auto k = static_cast<std::size_t>(std::upper_bound(values.begin(), values.end(), x) - values.begin()) - 1;
    return levels[k] + (levels[k + 1] - levels[k]) * (x - values[k]) / (values[k + 1] - values[k]);
}

// Cell masses of a distribution on the grid lo + i * dx.
std::vector<double> grid_masses(const std::vector<double>& levels, const std::vector<double>& values, double dx) {
    const double lo = values.front();
    const auto n = static_cast<std::size_t>(std::ceil((values.back() - lo) / dx)) + 1;
    std::vector<double> m(n);
    double prev = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double edge = lo + static_cast<double>(i + 1) * dx;
        const double c = i + 1 == n ? 1.0 : piecewise_cdf(levels, values, edge);
        m[i] = c - prev;
        prev = c;
    }
    return m;
}

// Median of X + Y for independent X, Y by direct convolution of grid masses.
double convolution_median(const std::vector<double>& levels, const std::vector<double>& a,
                          const std::vector<double>& b) {
    const double span = std::max(a.back() - a.front(), b.back() - b.front());
    if (span <= 0.0) return a.front() + b.front();
    const double dx = span / 4000.0;
    const auto ma = grid_masses(levels, a, dx);
    const auto mb = grid_masses(levels, b, dx);
    std::vector<double> sum(ma.size() + mb.size() - 1, 0.0);
    for (std::size_t i = 0; i < ma.size(); ++i) {
        if (ma[i] == 0.0) continue;
        for (std::size_t j = 0; j < mb.size(); ++j) sum[i + j] += ma[i] * mb[j];
    }
    // Cell i + j covers [lo + (i + j) dx, lo + (i + j + 2) dx); use its midpoint band.
    const double lo = a.front() + b.front();
    double cum = 0.0;
    for (std::size_t k = 0; k < sum.size(); ++k) {
        if (cum + sum[k] >= 0.5) {
            const double frac = sum[k] > 0.0 ? (0.5 - cum) / sum[k] : 0.0;
            return lo + (static_cast<double>(k) + 0.5 + frac) * dx;
        }
        cum += sum[k];
    }
    return a.back() + b.back();
}

double reference_wis(const score::ForecastRecord& r) {
    const double alphas[] = {0.5, 0.2, 0.05};
    double total = 0.5 * std::abs(r.observed - r.quantiles[3]);
    for (std::size_t k = 0; k < 3; ++k) {
        const double l = r.quantiles[2 - k], u = r.quantiles[4 + k], a = alphas[k];
        double is = u - l;
        if (r.observed < l) is += 2.0 / a * (l - r.observed);
        if (r.observed > u) is += 2.0 / a * (r.observed - u);
        total += a / 2.0 * is;
    }
    return total / 3.5;
}

std::vector<double> smooth_context(Engine& rng, double scale) {
    std::vector<double> y(20);
    const double phase = uniform(rng, 0.0, 6.0), freq = uniform(rng, 0.1, 0.5);
    for (std::size_t i = 0; i < y.size(); ++i)
        y[i] = scale * (1.2 + std::sin(freq * static_cast<double>(i) + phase) + uniform(rng, 0.0, 0.3));
    return y;
}

// ---------------------------------------------------------------- criteria

Outcome non_crossing() {
    const model::QuantileTransformer m(model::ModelConfig::desk());
    Engine rng = make_engine(101);
    std::size_t violations = 0;
    constexpr std::size_t kDraws = 10'000;
    for (std::size_t draw = 0; draw < kDraws; ++draw) {
        auto params = m.initial_parameters(draw);
        const double spread = std::pow(10.0, uniform(rng, -2.0, 1.0));
        for (double& p : params) p += spread * uniform(rng, -1.0, 1.0);
        std::vector<double> z(20);
        for (double& v : z) v = uniform(rng);
        const auto q = m.predict_quantiles(params, z);
        std::vector<double> raw(q.size());
        for (double& v : raw) v = uniform(rng, -60.0, 60.0);
        const auto q2 = model::to_quantiles(raw, 4, 27);
        for (const auto* out : {&q, &q2})
            for (std::size_t h = 0; h < 4; ++h)
                for (std::size_t k = 1; k < 27; ++k)
                    if (!((*out)[h * 27 + k] >= (*out)[h * 27 + k - 1])) ++violations;
    }
    return {violations == 0, std::to_string(kDraws) + " parameter draws, " + std::to_string(violations) + " violations"};
}

Outcome gradient_check() {
    model::ModelConfig c = model::ModelConfig::desk();
    c.d_model = 16;
    c.d_ff = 32;
    const auto start = Clock::now();
    const auto report = model::grad_check(c, 2024);
    const double secs = seconds_since(start);
    return {report.passed(1e-4) && secs < 60.0, "d=16, " + std::to_string(report.checked) +
                                                    " parameters, max rel error " + fmt_double(report.max_rel_error) +
                                                    " (" + report.worst_parameter + "), " + fmt_double(secs) + " s"};
}

Outcome wis_oracle() {
    const score::ScoreConfig cfg;
    score::ForecastRecord perfect;
    perfect.observed = 12.0;
    perfect.quantiles.fill(12.0);
    const double w0 = score::wis(perfect, cfg);
    score::ForecastRecord ones;
    ones.observed = 0.0;
    ones.quantiles.fill(1.0);
    const double w1 = score::wis(ones, cfg);

    Engine rng = make_engine(7);
    double worst = 0.0;
    for (int i = 0; i < 10'000; ++i) {
        score::ForecastRecord r;
        std::array<double, 7> q{};
        for (double& v : q) v = uniform(rng, 0.0, 100.0);
        std::sort(q.begin(), q.end());
        r.quantiles = q;
        r.observed = uniform(rng, 0.0, 120.0);
        const double ref = reference_wis(r);
        worst = std::max(worst, std::abs(score::wis(r, cfg) - ref) / std::max(1.0, ref));
    }
    const bool pass = w0 == 0.0 && std::abs(w1 - 1.0) <= 1e-12 && worst <= 1e-12;
    return {pass, "perfect " + fmt_double(w0) + ", y=0/all-ones " + fmt_double(w1) + ", decomposition max rel diff " +
                      fmt_double(worst)};
}

Outcome observation_model() {
    const obs::ObsConfig cfg;
    Engine rng = make_engine(55);
    constexpr std::size_t kRealizations = 100'000;
    SurveillanceSeries base;
    base.id = "base";
    base.source_run = "run";
    for (int t = 0; t < 60; ++t) base.values.push_back(5.0 + 3.0 * t + (t % 7));

    std::size_t ratio_violations = 0;
    for (std::size_t i = 0; i < kRealizations; ++i) {
        const auto v = obs::add_noise(base, rng, cfg);
        for (std::size_t t = 0; t < base.size(); ++t) {
            const double r = v.values[t] / base.values[t];
            if (!(r >= 1.0 / 3.5 && r <= 3.5)) ++ratio_violations;
        }
    }
    std::size_t count_violations = 0;
    for (std::size_t i = 0; i < kRealizations; ++i) {
        const auto d = obs::add_outliers_detailed(base, rng, cfg);
        if (d.positions.size() < 5 || d.positions.size() > 10) ++count_violations;
    }
    std::size_t total = 0, outliered = 0, bad_noised = 0;
    while (total < kRealizations) {
        const auto out = obs::realize_tc(base, rng, cfg);
        std::size_t noised = 0;
        for (const auto& r : out) {
            noised += r.noised;
            outliered += r.outliered;
        }
        if (out.size() != 20 || noised != 10) ++bad_noised;
        total += out.size();
    }
    const double freq = static_cast<double>(outliered) / static_cast<double>(total);
    const bool pass = ratio_violations == 0 && count_violations == 0 && std::abs(freq - 0.25) <= 0.02 && bad_noised == 0;
    return {pass, "ratio violations " + std::to_string(ratio_violations) + ", outlier-count violations " +
                      std::to_string(count_violations) + ", outlier frequency " + fmt_double(freq) +
                      ", inputs without exactly 10/20 noised " + std::to_string(bad_noised)};
}

Outcome window_enumeration() {
    auto corpus_count = [](std::size_t t, std::size_t c, std::size_t h) {
        SurveillanceSeries s;
        s.values.assign(t, 1.0);
        return data::WindowCorpus({s}, c, h).total_windows();
    };
    const std::size_t base = data::enumerate_windows(100, 20, 4);
    const std::size_t base_corpus = corpus_count(100, 20, 4);
    Engine rng = make_engine(3);
    std::size_t mismatches = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto t = uniform_int<std::size_t>(rng, 1, 300);
        const auto c = uniform_int<std::size_t>(rng, 1, 60);
        const auto h = uniform_int<std::size_t>(rng, 1, 12);
        std::size_t brute = 0;
        for (std::size_t s = 0; s < t; ++s)
            if (s + c + h <= t) ++brute;
        if (data::enumerate_windows(t, c, h) != brute || corpus_count(t, c, h) != brute) ++mismatches;
    }
    return {base == 77 && base_corpus == 77 && mismatches == 0,
            "T=100,C=20,H=4 -> " + std::to_string(base) + " (corpus " + std::to_string(base_corpus) +
                "), brute-force mismatches " + std::to_string(mismatches) + "/1000"};
}

Outcome vac_aggregation(PipelineRuns& runs) {
    std::optional<model::Checkpoint> ckpt;
    std::string source = "initial parameters";
    if (const auto& dir = runs.first(); dir && fs::exists(*dir / "train" / "model.ckpt")) {
        ckpt = model::load_checkpoint(*dir / "train" / "model.ckpt");
        source = "desk checkpoint";
    } else {
        const auto c = model::ModelConfig::desk();
        ckpt = model::Checkpoint{c, model::QuantileTransformer(c).initial_parameters(1), 0, 0.0,
                                 model::kCheckpointVersion};
    }
    const forecast::Forecaster f(*ckpt);
    Engine rng = make_engine(77);

    // Single variant against the direct pathway.
    double worst_single = 0.0;
    for (int c = 0; c < 5; ++c) {
        const auto ctx = smooth_context(rng, std::pow(10.0, c));
        const auto tc = f.forecast_tc(ctx);
        const std::vector<std::vector<double>> one{ctx};
        const auto vac = f.forecast_vac(one, 100'000, 1000 + c);
        for (std::size_t h = 0; h < tc.size(); ++h) {
            const double scale = std::max(tc[h].at(0.5), 1e-12);
            for (std::size_t k = 0; k < tc[h].values.size(); ++k) {
                const double ref = std::max(std::abs(tc[h].values[k]), scale);
                worst_single = std::max(worst_single, std::abs(vac[h].values[k] - tc[h].values[k]) / ref);
            }
        }
    }

    // Point masses.
    const std::vector<double> levels(data::kQuantileLevels.begin(), data::kQuantileLevels.end());
    const std::vector<std::vector<double>> masses{std::vector<double>(27, 3.0), std::vector<double>(27, 4.0)};
    const auto mass_sum = forecast::sum_quantiles(levels, masses, data::kEvalLevels, 100'000, 5);
    const bool masses_exact = std::all_of(mass_sum.begin(), mass_sum.end(), [](double v) { return v == 7.0; });

    // Two variants against a grid convolution.
    double worst_conv = 0.0;
    for (int c = 0; c < 4; ++c) {
        const auto a = smooth_context(rng, 50.0);
        const auto b = smooth_context(rng, 20.0 * (c + 1));
        const std::vector<std::vector<double>> both{a, b};
        const auto vac = f.forecast_vac(both, 100'000, 2000 + c);
        const auto qa = f.full_quantiles(a);
        const auto qb = f.full_quantiles(b);
        for (std::size_t h = 0; h < vac.size(); ++h) {
            const std::vector<double> va(qa.begin() + h * 27, qa.begin() + (h + 1) * 27);
            const std::vector<double> vb(qb.begin() + h * 27, qb.begin() + (h + 1) * 27);
            const double oracle = convolution_median(levels, va, vb);
            worst_conv = std::max(worst_conv, std::abs(vac[h].at(0.5) - oracle) / std::max(oracle, 1e-12));
        }
    }
    for (int c = 0; c < 4; ++c) {
        std::vector<double> va(27), vb(27);
        for (std::size_t k = 0; k < 27; ++k) {
            va[k] = std::exp(2.0 + (0.3 + 0.2 * c) * (levels[k] - 0.5) * 6.0);
            vb[k] = 10.0 + 40.0 * levels[k] * levels[k] * (c + 1);
        }
        const std::vector<std::vector<double>> both{va, vb};
        const std::vector<double> median{0.5};
        const double mc = forecast::sum_quantiles(levels, both, median, 100'000, 3000 + c)[0];
        const double oracle = convolution_median(levels, va, vb);
        worst_conv = std::max(worst_conv, std::abs(mc - oracle) / oracle);
    }
    const bool pass = worst_single <= 0.01 && masses_exact && worst_conv <= 0.02;
    return {pass, source + ": single-variant max rel diff " + fmt_double(worst_single) + ", 3+4 exact " +
                      (masses_exact ? "yes" : "no") + ", convolution median max rel diff " + fmt_double(worst_conv)};
}

Outcome simulator_conservation() {
    const auto bounds = sim::simulator_bounds();
    const auto design = sim::lhs_sample(bounds, 100, 404);
    std::size_t day_violations = 0, week_violations = 0, days = 0, weeks = 0;
    const auto start = Clock::now();
    for (std::size_t i = 0; i < design.n_samples; ++i) {
        const auto p = sim::params_from_row(design.row(i));
        const auto out = sim::run_sim(p, derive_seed(9, "conservation", i), std::chrono::seconds(600),
                                      [&](const sim::DayCensus& c) {
                                          ++days;
                                          if (c.hosts != p.population_size || c.uninfected + c.infected != c.hosts)
                                              ++day_violations;
                                      });
        for (std::size_t t = 0; t < out.tc.size(); ++t) {
            ++weeks;
            double sum = 0.0;
            for (const auto& v : out.vacs) sum += t < v.size() ? v.values[t] : 0.0;
            if (sum != out.tc.values[t]) ++week_violations;
        }
    }
    return {day_violations == 0 && week_violations == 0 && days > 0,
            "100 draws, " + std::to_string(days) + " days, " + std::to_string(weeks) + " weeks, violations " +
                std::to_string(day_violations) + " daily / " + std::to_string(week_violations) + " weekly, " +
                fmt_double(seconds_since(start)) + " s"};
}

Outcome subcritical_extinction() {
    sim::SimParams p;
    p.beta = 0.143;
    p.nu = 0.25;
    p.fixed.external_migration = 0.0;
    const auto start = Clock::now();
    std::size_t extinct = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed)
        if (sim::run_sim(p, derive_seed(31, "subcritical", seed), std::chrono::seconds(600)).status ==
            sim::SimStatus::extinct)
            ++extinct;
    const double secs = seconds_since(start);
    return {extinct >= 190 && secs < 600.0,
            "beta/nu=" + fmt_double(p.beta / p.nu) + ", extinct " + std::to_string(extinct) + "/200, " +
                fmt_double(secs) + " s"};
}

Outcome lhs_stratification() {
    const auto bounds = sim::simulator_bounds();
    constexpr std::size_t n = 4000;
    const auto design = sim::lhs_sample(bounds, n, 12345);
    std::size_t bad_dims = 0;
    for (std::size_t d = 0; d < design.dims(); ++d) {
        const auto& b = bounds[d];
        std::vector<std::size_t> hits(n, 0);
        bool ok = true;
        for (std::size_t i = 0; i < n; ++i) {
            const double x = design.row(i)[d];
            if (x < b.lower || x > b.upper) ok = false;
            const double u = b.upper > b.lower ? (x - b.lower) / (b.upper - b.lower) : design.unit_row(i)[d];
            const auto stratum = std::min(n - 1, static_cast<std::size_t>(u * static_cast<double>(n)));
            const auto unit_stratum = static_cast<std::size_t>(design.unit_row(i)[d] * static_cast<double>(n));
            if (unit_stratum != stratum && b.upper > b.lower) {
                // Rounding at a stratum edge in the scaled value; trust the unit coordinate.
                const double edge = std::round(u * static_cast<double>(n));
                if (std::abs(u * static_cast<double>(n) - edge) > 1e-6) ok = false;
            }
            ++hits[std::min(n - 1, unit_stratum)];
        }
        if (!ok || std::any_of(hits.begin(), hits.end(), [](std::size_t h) { return h != 1; })) ++bad_dims;
    }
    return {bad_dims == 0, "n=4000, " + std::to_string(design.dims()) + " dimensions, " + std::to_string(bad_dims) +
                               " not stratified"};
}

Outcome bootstrap_width_ordering() {
    std::size_t wider = 0;
    constexpr std::size_t kScenarios = 50;
    for (std::size_t s = 0; s < kScenarios; ++s) {
        Engine rng = make_engine(derive_seed(88, "scenario", s));
        const auto locations = uniform_int<std::size_t>(rng, 10, 30);
        const auto dates = uniform_int<std::size_t>(rng, 40, 90);
        const double phi = uniform(rng, 0.7, 0.95);
        std::vector<score::ForecastRecord> recs;
        for (std::size_t l = 0; l < locations; ++l) {
            const double level = uniform(rng, -3.0, 3.0);
            double drift = 0.0;
            for (std::size_t d = 0; d < dates; ++d) {
                drift = phi * drift + uniform(rng, -1.0, 1.0);
                for (std::size_t h = 1; h <= 4; ++h) {
                    for (const char* name : {"persistence", "model"}) {
                        const bool base = name[0] == 'p';
                        const double c = 50.0 + (base ? 1.0 : 0.5) * (level + drift) * static_cast<double>(h);
                        const double w = 2.0 + static_cast<double>(h);
                        score::ForecastRecord r;
                        r.location = "loc" + std::to_string(l);
                        r.date = static_cast<std::int64_t>(d);
                        r.horizon = h;
                        r.model = name;
                        r.observed = 50.0 + uniform(rng, -2.0, 2.0);
                        r.quantiles = {c - 2 * w, c - 1.3 * w, c - 0.7 * w, c, c + 0.7 * w, c + 1.3 * w, c + 2 * w};
                        r.point = c;
                        recs.push_back(r);
                    }
                }
            }
        }
        score::BootstrapConfig cfg;
        cfg.n_reps = 1000;
        cfg.mode = score::BootstrapMode::block;
        const auto block = score::bootstrap(recs, cfg, derive_seed(88, "block", s));
        cfg.mode = score::BootstrapMode::iid;
        const auto iid = score::bootstrap(recs, cfg, derive_seed(88, "iid", s));
        const auto& b = block.intervals.at({"model", "wis"});
        const auto& i = iid.intervals.at({"model", "wis"});
        if (b.upper - b.lower >= i.upper - i.lower) ++wider;
    }
    return {wider >= 45, "block at least as wide in " + std::to_string(wider) + "/50 scenarios"};
}

Outcome desk_training(PipelineRuns& runs) {
    const auto& dir = runs.first();
    if (!dir) return {false, runs.failure()};
    std::ifstream in(*dir / "train" / "manifest.json");
    if (!in) return {false, "train manifest missing"};
    const auto m = nlohmann::json::parse(in);
    const auto& sum = m.at("summary");
    const std::string d_model = m.at("config").at("model.d_model").get<std::string>();
    const auto updates = sum.at("updates_run").get<std::size_t>();
    const auto series = sum.at("training_series").get<std::size_t>();
    const double secs = sum.at("wall_seconds").get<double>();
    const double best = sum.at("best_val_loss").get<double>();
    const double initial = sum.at("initial_val_loss").get<double>();
    const double baseline = sum.at("context_mean_val_loss").get<double>();
    const bool pass = d_model == "32" && updates == 2000 && series >= 50 && secs < 1800.0 && best < initial &&
                      best < baseline && sum.at("status").get<std::string>() == "completed";
    return {pass, "d=" + d_model + ", " + std::to_string(updates) + " updates, " + std::to_string(series) +
                      " series, " + fmt_double(secs) + " s, best " + fmt_double(best) + " vs initial " +
                      fmt_double(initial) + " and context-mean " + fmt_double(baseline)};
}

Outcome determinism(PipelineRuns& runs) {
    const auto& a = runs.first();
    const auto& b = runs.second();
    if (!a || !b) return {false, runs.failure()};
    const auto fa = read_bytes(*a / "score" / "scores.csv");
    const auto fb = read_bytes(*b / "score" / "scores.csv");
    const bool pass = !fa.empty() && fa == fb;
    return {pass, "scores.csv " + std::to_string(fa.size()) + " bytes, " + (pass ? "identical" : "different")};
}

}  // namespace

int main(int argc, char** argv) {
    PipelineRuns runs(argc > 1 ? fs::path(argv[1]) : fs::path("acceptance_work"));
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"quantile-non-crossing", non_crossing},
        {"gradient-check", gradient_check},
        {"wis-oracle", wis_oracle},
        {"observation-model-distributions", observation_model},
        {"window-enumeration", window_enumeration},
        {"vac-aggregation", [&] { return vac_aggregation(runs); }},
        {"simulator-conservation", simulator_conservation},
        {"subcritical-extinction", subcritical_extinction},
        {"lhs-stratification", lhs_stratification},
        {"bootstrap-width-ordering", bootstrap_width_ordering},
        {"desk-training-run", [&] { return desk_training(runs); }},
        {"end-to-end-determinism", [&] { return determinism(runs); }},
    };
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        const auto start = Clock::now();
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << " [" << fmt_double(seconds_since(start))
                  << " s]" << std::endl;
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed"
              << std::endl;
    return failed == 0 ? 0 : 1;
}
