#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fcprog/gru.hpp"
#include "fcprog/kde.hpp"
#include "fcprog/timeseries.hpp"

namespace fcprog {

/// Snapshot of the observed (normalized) indicator up to the prediction time.
struct PrognosticsPoint {
    double t_now;
    TimeSeries history;  // ends at t_now
};

/// History truncated at t_now; throws when fewer than 2 samples remain.
PrognosticsPoint make_prognostics_point(const TimeSeries& full_history, double t_now);

struct RulConfig {
    int n_models = 20;
    double abba_tol = 0.001;
    std::size_t abba_max_k = 100;
    std::size_t gru_layers = 2;
    std::size_t gru_hidden = 50;
    TrainConfig train;  // window, learning rate, batch, epoch caps
    double forecast_span_factor = 3.0;     // horizon = factor * remaining data span
    std::size_t forecast_max_symbols = 10000;
};

/// One ensemble member's forecast, anchored at the last observed sample.
struct ModelTrajectory {
    std::uint64_t seed;
    TimeSeries trajectory;  // starts at t_now
};

struct RulEstimate {
    std::vector<double> samples;  // crossing models' RULs, seed order
    std::size_t excluded_count;
    KdeResult kde;
    double rul_mode;
};

/// First time the trajectory reaches the threshold (value <= ft), linearly
/// interpolated between the bracketing samples; empty when never crossed.
std::optional<double> trajectory_to_eol(const TimeSeries& trajectory, double ft);

/// Trains one model per seed 1..n_models (symbolic conversion, network init
/// and batch order all keyed to the seed) and reconstructs each forecast as
/// a series starting at t_now. horizon_hours bounds the forecast span;
/// symbols stop once the reconstruction covers it.
std::vector<ModelTrajectory> build_ensemble_trajectories(const PrognosticsPoint& point,
                                                         const RulConfig& cfg,
                                                         double horizon_hours, int jobs = 1);

/// Crosses pre-built trajectories with one threshold and runs the density
/// estimate; mode of the estimate is the reported RUL. Models that never
/// cross are excluded; more than half excluded is an error.
RulEstimate rul_from_trajectories(const std::vector<ModelTrajectory>& trajectories,
                                  double t_now, double ft);

/// Single-threshold convenience wrapper: build trajectories, then estimate.
/// horizon_hours <= 0 falls back to forecast_span_factor times the history
/// span.
RulEstimate predict_rul(const PrognosticsPoint& point, double ft, const RulConfig& cfg,
                        double horizon_hours = 0.0);

/// JSON report {t_now, ft, samples, excluded, bandwidth, rul_mode, eol_mode}.
void write_rul_report_json(const std::string& path, const RulEstimate& estimate,
                           double t_now, double ft);

}  // namespace fcprog
