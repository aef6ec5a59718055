#include "fcprog/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "fcprog/csv_io.hpp"
#include "fcprog/emd.hpp"
#include "fcprog/errors.hpp"
#include "fcprog/hi_extract.hpp"
#include "fcprog/hilbert.hpp"
#include "fcprog/metrics.hpp"
#include "fcprog/rul.hpp"
#include "fcprog/synth.hpp"

namespace fcprog {

namespace {

namespace fs = std::filesystem;

std::string out_path(const PipelineConfig& cfg, const std::string& name) {
    fs::create_directories(cfg.out_dir);
    return (fs::path(cfg.out_dir) / name).string();
}

void write_json(const std::string& path, const nlohmann::ordered_json& doc) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << doc.dump(2) << '\n';
    if (!out) throw Error("write failed for '" + path + "'");
}

TimeSeries load_normalized_hi(const std::string& hi_csv) {
    TimeSeries hi = read_timeseries_csv(hi_csv);
    // Idempotent for an already-normalized indicator; maps a raw one onto
    // [0, 1] so the configured thresholds mean the same thing either way.
    return normalize_full_life(hi).first;
}

double threshold_eol(const TimeSeries& hi, double ft) {
    std::optional<double> eol = trajectory_to_eol(hi, ft);
    if (!eol)
        throw NumericError("indicator never reaches failure threshold " +
                           std::to_string(ft));
    return *eol;
}

nlohmann::ordered_json estimate_json(const RulEstimate& est, double t_now, double ft) {
    nlohmann::ordered_json j;
    j["ft"] = ft;
    j["samples"] = est.samples;
    j["excluded"] = est.excluded_count;
    j["bandwidth"] = est.kde.bandwidth;
    j["rul_mode"] = est.rul_mode;
    j["eol_mode"] = t_now + est.rul_mode;
    return j;
}

}  // namespace

RulConfig rul_config_from(const PipelineConfig& cfg) {
    RulConfig r;
    r.n_models = cfg.n_models;
    r.abba_tol = cfg.abba_tol;
    r.abba_max_k = cfg.abba_max_k;
    r.gru_layers = cfg.gru_layers;
    r.gru_hidden = cfg.gru_hidden;
    r.train = cfg.train;
    r.forecast_span_factor = cfg.forecast_span_factor;
    r.forecast_max_symbols = cfg.forecast_max_symbols;
    return r;
}

void cmd_synth(const PipelineConfig& cfg) {
    const LoadProfile profile = cfg.synth_profile == "fc2" ? fc2_profile() : fc1_profile();
    DegradationSpec spec;
    spec.v0 = cfg.synth_v0;
    if (cfg.synth_trend == "piecewise") spec.trend = TrendKind::piecewise_linear;
    else if (cfg.synth_trend == "exponential") spec.trend = TrendKind::exponential;
    else spec.trend = TrendKind::linear;
    spec.rate_pct_per_h = cfg.synth_rate_pct_per_h;
    spec.noise_std = cfg.synth_noise_pct / 100.0 * cfg.synth_v0;
    spec.load_swing_pct = cfg.synth_load_swing_pct;
    spec.load_time_scale = cfg.synth_load_time_scale;
    spec.seed = cfg.seed;

    SynthResult result =
        generate(profile, spec, cfg.synth_total_hours, cfg.synth_dt_seconds / 3600.0);

    write_timeseries_csv(out_path(cfg, "voltage.csv"), result.voltage);
    write_timeseries_csv(out_path(cfg, "current.csv"), result.current);
    write_timeseries_csv(out_path(cfg, "temperature.csv"), result.temperature);
    write_timeseries_csv(out_path(cfg, "true_trend.csv"), result.true_trend);

    nlohmann::ordered_json report;
    report["config"] = config_echo(cfg);
    report["samples"] = result.voltage.size();
    report["cycle_hours"] = profile.cycle_seconds() / cfg.synth_load_time_scale / 3600.0;
    write_json(out_path(cfg, "synth_report.json"), report);
}

void cmd_decompose(const PipelineConfig& cfg, const std::string& input_csv) {
    const TimeSeries series = read_timeseries_csv(input_csv);
    const ImfSet set = decompose(series, cfg.sift);

    write_imfs_csv(out_path(cfg, "imfs.csv"), set);

    nlohmann::ordered_json meta;
    meta["config"] = config_echo(cfg);
    meta["imf_count"] = set.imfs.size();
    meta["sift_iterations"] = set.sift_iterations;
    meta["sift_hit_cap"] = set.sift_hit_cap;
    write_json(out_path(cfg, "imfs_meta.json"), meta);

    std::vector<TimeSeries> components = set.imfs;
    components.push_back(set.residual);
    HilbertSpectrum spectrum;
    try {
        spectrum = build_spectrum(components, cfg.spectrum_bins);
    } catch (const EmptyBinsError&) {
        // No positive-frequency content anywhere (constant or monotone
        // input); an empty spectrum is the honest answer.
        spectrum.times.assign(series.size(), 0.0);
        for (std::size_t i = 0; i < series.size(); ++i)
            spectrum.times[i] = series.time_at(i);
    }
    write_spectrum_json(out_path(cfg, "spectrum.json"), spectrum);
}

void cmd_extract(const PipelineConfig& cfg, const std::string& input_csv) {
    const TimeSeries voltage = read_timeseries_csv(input_csv);
    const HiExtractionResult result = extract_hi(voltage, cfg.threshold_hz, cfg.sift);
    auto [hi, record] = normalize_full_life(result.hi);

    write_timeseries_csv(out_path(cfg, "hi.csv"), hi);

    nlohmann::ordered_json report;
    report["config"] = config_echo(cfg);
    report["imf_count"] = result.imf_count;
    report["threshold_hz"] = result.threshold_hz;
    report["threshold_met"] = result.threshold_met;
    report["if_summary"] = result.if_summary;
    report["normalization"] = {{"hi_min", record.hi_min}, {"hi_max", record.hi_max}};
    write_json(out_path(cfg, "extraction_report.json"), report);
}

void cmd_predict(const PipelineConfig& cfg, const std::string& hi_csv, double t_now) {
    const TimeSeries hi = load_normalized_hi(hi_csv);
    if (t_now > hi.end_time() + 1e-9 * hi.dt())
        throw InsufficientHistoryError("t_now is past the end of the indicator");

    const PrognosticsPoint point = make_prognostics_point(hi, t_now);
    const RulConfig rcfg = rul_config_from(cfg);
    const double horizon = rcfg.forecast_span_factor * (hi.end_time() - point.t_now);
    const auto trajectories = build_ensemble_trajectories(
        point, rcfg,
        horizon > 0 ? horizon
                    : rcfg.forecast_span_factor * (point.t_now - hi.time_at(0)),
        cfg.jobs);

    nlohmann::ordered_json report;
    report["config"] = config_echo(cfg);
    report["t_now"] = point.t_now;
    report["thresholds"] = nlohmann::ordered_json::array();
    for (double ft : cfg.thresholds) {
        const RulEstimate est = rul_from_trajectories(trajectories, point.t_now, ft);
        report["thresholds"].push_back(estimate_json(est, point.t_now, ft));
    }
    write_json(out_path(cfg, "rul_report.json"), report);
}

void cmd_evaluate(const PipelineConfig& cfg, const std::string& hi_csv) {
    const TimeSeries hi = load_normalized_hi(hi_csv);

    std::vector<double> eols;
    eols.reserve(cfg.thresholds.size());
    for (double ft : cfg.thresholds) eols.push_back(threshold_eol(hi, ft));

    // Fraction schedules hang off the earliest end of life (the largest
    // threshold), so every point precedes failure under every threshold.
    std::vector<double> points = cfg.points_hours;
    if (points.empty())
        for (double frac : cfg.points_frac) points.push_back(frac * eols.back());

    const RulConfig rcfg = rul_config_from(cfg);
    std::vector<std::vector<std::pair<double, double>>> predictions(cfg.thresholds.size());
    for (double t_point : points) {
        if (t_point > hi.end_time() + 1e-9 * hi.dt())
            throw InsufficientHistoryError("prognostics point is past the end of the indicator");
        const PrognosticsPoint point = make_prognostics_point(hi, t_point);
        const double horizon = rcfg.forecast_span_factor * (hi.end_time() - point.t_now);
        const auto trajectories =
            build_ensemble_trajectories(point, rcfg, horizon, cfg.jobs);
        for (std::size_t i = 0; i < cfg.thresholds.size(); ++i) {
            const RulEstimate est =
                rul_from_trajectories(trajectories, point.t_now, cfg.thresholds[i]);
            predictions[i].emplace_back(point.t_now, est.rul_mode);
        }
    }

    std::vector<EvaluationRecord> records;
    records.reserve(cfg.thresholds.size());
    for (std::size_t i = 0; i < cfg.thresholds.size(); ++i)
        records.push_back(
            evaluate_threshold(cfg.thresholds[i], eols[i], predictions[i], cfg.metrics));

    write_evaluation_csv(out_path(cfg, "evaluation.csv"), records);

    nlohmann::ordered_json summary;
    summary["config"] = config_echo(cfg);
    summary["thresholds"] = nlohmann::ordered_json::array();
    for (const auto& rec : records) {
        summary["thresholds"].push_back({{"ft", rec.ft},
                                         {"eol_true", rec.eol_true},
                                         {"ph", rec.ph},
                                         {"mean_ra", rec.mean_ra},
                                         {"alpha_lambda_pass_rate",
                                          rec.alpha_lambda_pass_rate}});
    }
    write_json(out_path(cfg, "summary.json"), summary);
}

}  // namespace fcprog
