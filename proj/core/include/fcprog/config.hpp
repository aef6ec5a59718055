#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fcprog/emd.hpp"
#include "fcprog/gru.hpp"
#include "fcprog/metrics.hpp"

namespace fcprog {

/// Fully-resolved pipeline settings. File values override these defaults,
/// command-line flags override the file.
struct PipelineConfig {
    int schema_version = 1;
    std::uint64_t seed = 42;
    std::string out_dir = "out";
    int jobs = 1;

    // synth
    std::string synth_profile = "fc1";  // fc1 | fc2
    std::string synth_trend = "linear";  // linear | piecewise | exponential
    double synth_v0 = 3.3;
    double synth_total_hours = 1200.0;
    double synth_dt_seconds = 30.0;
    double synth_rate_pct_per_h = 0.012;
    double synth_noise_pct = 0.2;  // percent of v0
    double synth_load_swing_pct = 20.0;
    double synth_load_time_scale = 1.0;

    SiftConfig sift;
    double threshold_hz = 0.005;
    std::size_t spectrum_bins = 64;

    double abba_tol = 0.001;
    std::size_t abba_max_k = 100;

    TrainConfig train;
    std::size_t gru_layers = 2;
    std::size_t gru_hidden = 50;

    int n_models = 20;
    double forecast_span_factor = 3.0;
    std::size_t forecast_max_symbols = 10000;

    MetricConfig metrics;
    std::vector<double> thresholds = {0.00, 0.01, 0.02, 0.03, 0.04,
                                      0.05, 0.06, 0.07, 0.08, 0.09};
    std::vector<double> points_frac = {0.1, 0.2, 0.3, 0.4, 0.5,
                                       0.6, 0.7, 0.8, 0.9};
    std::vector<double> points_hours;  // absolute schedule; overrides points_frac
};

/// Parses a structured key = value file with [section] headers, strings,
/// numbers, booleans and flat numeric arrays. Unknown keys, bad types and a
/// schema_version other than 1 raise ParseError with the offending line.
PipelineConfig load_config(const std::string& path);

/// Applies the same validation rules to an in-memory config.
void validate_config(const PipelineConfig& cfg);

/// Resolved settings as ordered JSON; embedded in every report.
nlohmann::ordered_json config_echo(const PipelineConfig& cfg);

}  // namespace fcprog
