#include "stages.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include <spdlog/spdlog.h>

#include <synthcast/data/windows.hpp>
#include <synthcast/forecast/forecaster.hpp>
#include <synthcast/forecast/io.hpp>
#include <synthcast/model/checkpoint.hpp>
#include <synthcast/model/train.hpp>
#include <synthcast/obs/observation.hpp>
#include <synthcast/rng.hpp>
#include <synthcast/score/bootstrap.hpp>
#include <synthcast/score/io.hpp>
#include <synthcast/score/persistence.hpp>
#include <synthcast/sim/io.hpp>
#include <synthcast/sim/lhs.hpp>
#include <synthcast/sim/sweep.hpp>

#include "manifest.hpp"

namespace synthcast::cli {

namespace fs = std::filesystem;

namespace {

fs::path prepare(const Context& ctx, const std::string& stage) {
    const auto dir = ctx.dir(stage);
    fs::create_directories(dir);
    return dir;
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw StageError(Exit::missing_input, "cannot write " + path.string());
    return out;
}

std::ifstream open_in(const fs::path& path, const std::string& what) {
    require_file(path, what);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StageError(Exit::missing_input, "cannot read " + path.string());
    return in;
}

// Clean series of one simulator run.
struct Location {
    std::string id;
    std::vector<double> tc;
    std::vector<std::vector<double>> vacs;
};

std::vector<Location> group_runs(const std::vector<SurveillanceSeries>& series) {
    std::map<std::string, Location> by_run;
    for (const auto& s : series) {
        auto& loc = by_run[s.source_run];
        loc.id = s.source_run;
        if (s.kind == SeriesKind::tc)
            loc.tc = s.values;
        else
            loc.vacs.push_back(s.values);
    }
    std::vector<Location> out;
    for (auto& [id, loc] : by_run) out.push_back(std::move(loc));
    return out;
}

std::vector<double> slice(const std::vector<double>& v, std::size_t first, std::size_t n) {
    return {v.begin() + static_cast<std::ptrdiff_t>(first), v.begin() + static_cast<std::ptrdiff_t>(first + n)};
}

}  // namespace

void run_simulate(const Context& ctx) {
    const auto& s = ctx.settings;
    const auto dir = prepare(ctx, "simulate");
    Manifest manifest("simulate", ctx);
    const auto design_seed = derive_seed(s.seed, "design");
    manifest.seed("design", design_seed);

    const auto bounds = sim::simulator_bounds();
    const auto design = sim::lhs_sample(bounds, s.design_size, design_seed);
    sim::SweepOptions options;
    options.master_seed = s.seed;
    options.min_dominance_weeks = s.min_dominance_weeks;
    options.workers = s.workers;
    spdlog::info("simulate: {} design points, {} replicates per retained point, {} worker(s)", s.design_size, s.reps,
                 s.workers);
    const auto sweep = sim::replicate_sweep(design, s.reps, std::chrono::duration<double>(s.wall_budget), options);

    std::map<std::string, std::size_t> status_counts;
    for (const auto& run : sweep.screening) ++status_counts[std::string(sim::to_string(run.status))];
    std::vector<sim::SimOutput> kept;
    for (const auto& run : sweep.replicates)
        if (run.status == sim::SimStatus::completed && run.turnover_flag) kept.push_back(run);

    {
        auto out = open_out(dir / "design.csv");
        sim::write_design_csv(out, design);
    }
    {
        auto out = open_out(dir / "series.csv");
        const auto series = sim::collect_series(kept);
        sim::write_series_csv(out, series, false);
    }
    {
        std::vector<sim::SimOutput> all = sweep.screening;
        all.insert(all.end(), sweep.replicates.begin(), sweep.replicates.end());
        auto out = open_out(dir / "runs.json");
        out << sim::run_manifest_json(all, design) << '\n';
    }
    for (const char* f : {"design.csv", "series.csv", "runs.json"}) manifest.output(dir / f);
    auto& summary = manifest.extra();
    summary["screening_status"] = status_counts;
    summary["retained_design_points"] = sweep.keepers.size();
    summary["replicate_runs"] = sweep.replicates.size();
    summary["runs_written"] = kept.size();
    manifest.write(dir);

    spdlog::info("simulate: screening statuses {}; {} of {} replicate runs completed with turnover",
                 nlohmann::json(status_counts).dump(), kept.size(), sweep.replicates.size());
    if (status_counts["wall_time_exceeded"] == sweep.screening.size())
        throw StageError(Exit::wall_time, "every screening run exhausted its wall-time budget of " +
                                              std::to_string(s.wall_budget) + " s");
    if (kept.size() < 2)
        throw StageError(Exit::numeric, "only " + std::to_string(kept.size()) +
                                            " run(s) completed with turnover; at least 2 are needed "
                                            "(increase sim.design_size or sim.reps)");
}

void run_augment(const Context& ctx) {
    const auto& s = ctx.settings;
    const auto sim_dir = ctx.dir("simulate");
    verify_stage(sim_dir, "simulate");
    const auto dir = prepare(ctx, "augment");
    Manifest manifest("augment", ctx);
    manifest.input(sim_dir / "series.csv");

    const auto clean = sim::read_series_csv(sim_dir / "series.csv");
    for (const auto& series : clean) validate_series(series);
    std::vector<std::string> runs;
    for (const auto& series : clean)
        if (series.kind == SeriesKind::tc) runs.push_back(series.source_run);
    std::sort(runs.begin(), runs.end());
    if (runs.size() < 2) throw StageError(Exit::missing_input, "augment needs at least two simulator runs");

    const auto holdout_seed = derive_seed(s.seed, "augment.holdout");
    manifest.seed("holdout", holdout_seed);
    std::vector<std::string> shuffled = runs;
    Engine pick = make_engine(holdout_seed);
    std::shuffle(shuffled.begin(), shuffled.end(), pick);
    const auto n_hold = std::clamp<std::size_t>(
        static_cast<std::size_t>(std::lround(s.holdout_fraction * static_cast<double>(runs.size()))), 1,
        runs.size() - 1);
    const std::set<std::string> holdout(shuffled.begin(), shuffled.begin() + static_cast<std::ptrdiff_t>(n_hold));

    std::map<std::string, std::vector<SurveillanceSeries>> by_run;
    for (const auto& series : clean) by_run[series.source_run].push_back(series);

    std::vector<SurveillanceSeries> train_series, holdout_series;
    score::Truth truth;
    for (const auto& run : runs) {
        auto& group = by_run[run];
        if (holdout.contains(run)) {
            for (const auto& series : group) {
                holdout_series.push_back(series);
                if (series.kind == SeriesKind::tc)
                    for (std::size_t w = 0; w < series.values.size(); ++w)
                        truth[run][static_cast<std::int64_t>(w)] = series.values[w];
            }
            continue;
        }
        Engine rng = make_engine(s.seed, "obs", fnv1a64(run));
        const auto tc = std::find_if(group.begin(), group.end(), [](const auto& x) { return x.kind == SeriesKind::tc; });
        std::vector<SurveillanceSeries> vacs;
        for (const auto& series : group)
            if (series.kind == SeriesKind::vac) vacs.push_back(series);
        for (auto& r : obs::realize_tc(*tc, rng, s.obs)) train_series.push_back(std::move(r));
        for (auto& r : obs::realize_vac(vacs, rng, s.obs)) train_series.push_back(std::move(r));
    }

    {
        auto out = open_out(dir / "train_series.csv");
        sim::write_series_csv(out, train_series, true);
    }
    {
        auto out = open_out(dir / "holdout_series.csv");
        sim::write_series_csv(out, holdout_series, false);
    }
    {
        auto out = open_out(dir / "truth.csv");
        score::write_truth(out, truth);
    }
    {
        data::WindowCorpus corpus(train_series, s.context, s.horizon);
        auto out = open_out(dir / "windows.csv");
        corpus.write_manifest(out);
        manifest.extra()["training_windows"] = corpus.total_windows();
    }
    for (const char* f : {"train_series.csv", "holdout_series.csv", "truth.csv", "windows.csv"})
        manifest.output(dir / f);
    manifest.extra()["training_runs"] = runs.size() - n_hold;
    manifest.extra()["holdout_runs"] = std::vector<std::string>(holdout.begin(), holdout.end());
    manifest.extra()["augmented_series"] = train_series.size();
    manifest.write(dir);
    spdlog::info("augment: {} augmented series from {} runs; {} runs held out for evaluation", train_series.size(),
                 runs.size() - n_hold, n_hold);
}

void run_train(const Context& ctx) {
    const auto& s = ctx.settings;
    const auto aug_dir = ctx.dir("augment");
    verify_stage(aug_dir, "augment");
    const auto dir = prepare(ctx, "train");
    Manifest manifest("train", ctx);
    manifest.input(aug_dir / "train_series.csv");

    auto series = sim::read_series_csv(aug_dir / "train_series.csv");
    const auto split_seed = derive_seed(s.seed, "data.split");
    const auto validation_seed = derive_seed(s.seed, "data.validation");
    model::TrainConfig tcfg = s.train;
    tcfg.seed = derive_seed(s.seed, "train");
    manifest.seed("split", split_seed);
    manifest.seed("validation", validation_seed);
    manifest.seed("train", tcfg.seed);

    auto split = data::split_by_source(std::move(series), s.validation_fraction, split_seed);
    data::WindowCorpus train_corpus(std::move(split.train), s.context, s.horizon);
    data::WindowCorpus validation_corpus(std::move(split.validation), s.context, s.horizon);
    if (train_corpus.total_windows() == 0) throw StageError(Exit::missing_input, "no training windows");
    const auto& source = validation_corpus.total_windows() > 0 ? validation_corpus : train_corpus;
    const auto validation = data::make_validation_set(source, s.validation_windows, validation_seed);

    spdlog::info("train: {} training windows from {} series, {} validation windows; {} parameters",
                 train_corpus.total_windows(), train_corpus.series_count(), validation.size(),
                 model::QuantileTransformer(s.model).parameter_count());
    const auto result = model::train(train_corpus, validation, s.model, tcfg, [](const model::TrainLogRow& row) {
        spdlog::info("train: update {:>6}  lr {:.3e}  train {:.5f}  val {:.5f}  ema val {:.5f}", row.update, row.lr,
                     row.train_loss, row.val_loss, row.ema_val_loss);
    });

    model::save_checkpoint(dir / "model.ckpt", result.best);
    {
        auto out = open_out(dir / "train_log.csv");
        model::write_train_log(out, result.log);
    }
    manifest.output(dir / "model.ckpt");
    manifest.output(dir / "train_log.csv");
    auto& summary = manifest.extra();
    summary["status"] = result.status == model::TrainStatus::completed ? "completed" : "diverged";
    summary["diagnostic"] = result.diagnostic;
    summary["updates_run"] = result.updates_run;
    summary["best_update"] = result.best.update_count;
    summary["initial_val_loss"] = result.initial_val_loss;
    summary["context_mean_val_loss"] = result.context_mean_val_loss;
    summary["best_val_loss"] = result.best.val_loss;
    summary["training_series"] = train_corpus.series_count();
    summary["wall_seconds"] = result.wall_seconds;
    manifest.write(dir);
    spdlog::info("train: best EMA checkpoint at update {} with validation loss {:.5f} (initial {:.5f}, context mean "
                 "{:.5f}) in {:.1f} s",
                 result.best.update_count, result.best.val_loss, result.initial_val_loss,
                 result.context_mean_val_loss, result.wall_seconds);
    if (result.status == model::TrainStatus::diverged) throw StageError(Exit::numeric, result.diagnostic);
}

void run_forecast(const Context& ctx) {
    const auto& s = ctx.settings;
    const auto aug_dir = ctx.dir("augment");
    const auto train_dir = ctx.dir("train");
    verify_stage(aug_dir, "augment");
    verify_stage(train_dir, "train");
    const auto dir = prepare(ctx, "forecast");
    Manifest manifest("forecast", ctx);
    manifest.input(aug_dir / "holdout_series.csv");
    manifest.input(train_dir / "model.ckpt");

    model::Checkpoint ckpt;
    try {
        ckpt = model::load_checkpoint(train_dir / "model.ckpt");
    } catch (const model::CheckpointError& e) {
        throw StageError(e.kind() == model::CheckpointError::Kind::io ? Exit::missing_input : Exit::checksum, e.what());
    }
    if (ckpt.config.context != s.context || ckpt.config.horizon != s.horizon)
        throw StageError(Exit::config, "checkpoint context/horizon differ from data.context/data.horizon");
    const forecast::Forecaster forecaster(std::move(ckpt));
    const auto locations = group_runs(sim::read_series_csv(aug_dir / "holdout_series.csv"));

    std::vector<forecast::QuantileForecast> tc_out, vac_out, base_out;
    const std::size_t C = s.context;
    const std::size_t H = s.horizon;
    for (const auto& loc : locations) {
        const std::size_t T = loc.tc.size();
        if (T < C + H) {
            spdlog::warn("forecast: location {} has only {} weeks; skipped", loc.id, T);
            continue;
        }
        for (std::size_t t = C - 1; t + H < T; t += s.forecast_stride) {
            const std::string date = std::to_string(t);
            const auto context = slice(loc.tc, t + 1 - C, C);
            for (auto& f : forecaster.forecast_tc(context, loc.id, date)) tc_out.push_back(std::move(f));

            std::vector<std::vector<double>> vac_contexts;
            for (const auto& v : loc.vacs) {
                auto c = slice(v, t + 1 - C, C);
                if (std::any_of(c.begin(), c.end(), [](double x) { return x > 0.0; })) vac_contexts.push_back(std::move(c));
            }
            if (vac_contexts.empty()) vac_contexts.push_back(context);  // nothing circulating: all zeros
            const auto seed = derive_seed(s.seed, "forecast.vac." + loc.id, t);
            for (auto& f : forecaster.forecast_vac(vac_contexts, s.n_draws, seed, loc.id, date, s.workers))
                vac_out.push_back(std::move(f));

            const std::span<const double> history(loc.tc.data(), t + 1);
            for (std::size_t h = 1; h <= H; ++h) {
                auto p = score::persistence_forecast(history, h, s.min_lookback);
                p.forecast.location = loc.id;
                p.forecast.forecast_date = date;
                base_out.push_back(std::move(p.forecast));
            }
        }
    }
    if (tc_out.empty()) throw StageError(Exit::missing_input, "no holdout location is long enough to forecast");

    const std::vector<std::pair<std::string, const std::vector<forecast::QuantileForecast>*>> files{
        {s.baseline, &base_out}, {"transformer_tc", &tc_out}, {"transformer_vac", &vac_out}};
    for (const auto& [model, rows] : files) {
        const auto path = dir / ("forecasts_" + model + ".csv");
        auto out = open_out(path);
        forecast::write_forecasts(out, *rows);
        out.close();
        manifest.output(path);
    }
    manifest.seed("forecast_vac_stream", derive_seed(s.seed, "forecast.vac"));
    manifest.extra()["locations"] = locations.size();
    manifest.extra()["forecasts_per_model"] = tc_out.size();
    manifest.write(dir);
    spdlog::info("forecast: {} forecasts per model over {} locations", tc_out.size(), locations.size());
}

namespace {

std::vector<score::ForecastRecord> load_records(const Context& ctx, Manifest& manifest) {
    const auto fc_dir = ctx.dir("forecast");
    const auto aug_dir = ctx.dir("augment");
    if (!fs::exists(fc_dir)) throw StageError(Exit::missing_input, "missing forecasts directory " + fc_dir.string());
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(fc_dir)) {
        const auto name = entry.path().filename().string();
        if (entry.is_regular_file() && name.starts_with("forecasts_") && name.ends_with(".csv"))
            files.push_back(entry.path());
    }
    if (files.empty()) throw StageError(Exit::missing_input, "no forecasts_<model>.csv files in " + fc_dir.string());
    verify_stage(fc_dir, "forecast");
    verify_stage(aug_dir, "augment");
    std::sort(files.begin(), files.end());

    auto truth_in = open_in(aug_dir / "truth.csv", "truth table");
    const auto truth = score::read_truth(truth_in);
    manifest.input(aug_dir / "truth.csv");

    std::vector<score::ForecastRecord> records;
    for (const auto& file : files) {
        const auto stem = file.stem().string();
        const auto model = stem.substr(std::string("forecasts_").size());
        auto in = open_in(file, "forecasts");
        const auto forecasts = forecast::read_forecasts(in);
        std::size_t unmatched = 0;
        auto rows = score::join_records(forecasts, model, truth, &unmatched);
        if (unmatched) spdlog::warn("score: {} forecasts of {} have no observation", unmatched, model);
        manifest.input(file);
        records.insert(records.end(), std::make_move_iterator(rows.begin()), std::make_move_iterator(rows.end()));
    }
    return records;
}

}  // namespace

void run_score(const Context& ctx) {
    const auto& s = ctx.settings;
    Manifest manifest("score", ctx);
    const auto records = load_records(ctx, manifest);
    const auto dir = prepare(ctx, "score");
    {
        auto out = open_out(dir / "scores.csv");
        score::write_scores(out, records, s.bootstrap.score, s.baseline);
    }
    manifest.output(dir / "scores.csv");
    manifest.extra()["records"] = records.size();
    manifest.write(dir);
    spdlog::info("score: {} records scored -> {}", records.size(), (dir / "scores.csv").string());
}

void run_bootstrap(const Context& ctx) {
    const auto& s = ctx.settings;
    Manifest manifest("bootstrap", ctx);
    const auto records = load_records(ctx, manifest);
    const auto dir = prepare(ctx, "bootstrap");
    auto cfg = s.bootstrap;
    cfg.baseline = s.baseline;
    cfg.workers = s.workers;
    const auto seed = derive_seed(s.seed, "bootstrap");
    manifest.seed("bootstrap", seed);
    const auto result = score::bootstrap(records, cfg, seed);
    {
        auto out = open_out(dir / "bootstrap.csv");
        score::write_bootstrap(out, result);
    }
    {
        auto out = open_out(dir / "bootstrap_ci.csv");
        score::write_bootstrap_intervals(out, result);
    }
    manifest.output(dir / "bootstrap.csv");
    manifest.output(dir / "bootstrap_ci.csv");
    manifest.extra()["mode"] = score::to_string(cfg.mode);
    manifest.extra()["replicates"] = cfg.n_reps;
    manifest.extra()["block_length"] = result.block_length;
    manifest.extra()["blocks_per_location"] = result.n_blocks;
    manifest.extra()["records_per_model_per_replicate"] = result.records_per_model;
    manifest.write(dir);
    for (const auto& [key, iv] : result.intervals)
        spdlog::info("bootstrap: {:<16} {:<5} {:.4g} [{:.4g}, {:.4g}]", key.first, key.second, iv.estimate, iv.lower,
                     iv.upper);
}

}  // namespace synthcast::cli
