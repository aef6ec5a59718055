#include "fcprog/rul.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <optional>
#include <thread>

#include <nlohmann/json.hpp>

#include "fcprog/abba.hpp"

namespace fcprog {

PrognosticsPoint make_prognostics_point(const TimeSeries& full_history, double t_now) {
    TimeSeries history = full_history.prefix_until(t_now);
    return PrognosticsPoint{history.end_time(), std::move(history)};
}

std::optional<double> trajectory_to_eol(const TimeSeries& trajectory, double ft) {
    if (trajectory[0] <= ft) return trajectory.time_at(0);
    for (std::size_t i = 1; i < trajectory.size(); ++i) {
        if (trajectory[i] <= ft) {
            const double prev = trajectory[i - 1];
            const double cur = trajectory[i];
            const double frac = (prev - ft) / (prev - cur);
            return trajectory.time_at(i - 1) + frac * trajectory.dt();
        }
    }
    return std::nullopt;
}

namespace {

// Closed-loop symbol generation bounded by reconstructed sample span. The
// cumulative length rounding mirrors inverse_digitize so the running span
// matches the final reconstruction exactly.
std::vector<std::size_t> forecast_until_span(const GruNetwork& net,
                                             const std::vector<std::size_t>& history_symbols,
                                             std::size_t window,
                                             const SymbolicModel& model,
                                             std::size_t span_samples,
                                             std::size_t max_symbols) {
    std::vector<std::size_t> rolling(history_symbols.end() - static_cast<std::ptrdiff_t>(window),
                                     history_symbols.end());
    std::vector<std::size_t> out;
    double running = 0.0;
    long long emitted = 0;
    while (out.size() < max_symbols && static_cast<std::size_t>(emitted) < span_samples) {
        Vec logits = forward_logits(net, rolling);
        std::size_t best = 0;
        for (std::size_t i = 1; i < logits.size(); ++i)
            if (logits[i] > logits[best]) best = i;
        out.push_back(best);
        running += model.codebook.centers[best].first * model.codebook.scale_len;
        long long len = std::llround(running) - emitted;
        if (len < 1) len = 1;
        emitted += len;
        rolling.erase(rolling.begin());
        rolling.push_back(best);
    }
    return out;
}

}  // namespace

std::vector<ModelTrajectory> build_ensemble_trajectories(const PrognosticsPoint& point,
                                                         const RulConfig& cfg,
                                                         double horizon_hours, int jobs) {
    if (cfg.n_models < 1) throw BadSpecError("ensemble needs at least one model");
    if (point.history.size() < 2)
        throw InsufficientHistoryError("prognostics point has too little history");

    const double dt = point.history.dt();
    const std::size_t span_samples =
        static_cast<std::size_t>(std::ceil(std::max(horizon_hours, dt) / dt));
    const double anchor = point.history[point.history.size() - 1];

    const CompressionResult compressed = compress(point.history, cfg.abba_tol);

    auto build_one = [&](int m) -> ModelTrajectory {
        const auto seed = static_cast<std::uint64_t>(m);
        SymbolicModel model = digitize(compressed.tuples, cfg.abba_max_k, cfg.abba_tol, seed,
                                       compressed.start_value);

        std::vector<std::size_t> predicted;
        const std::size_t n_sym = model.symbols.size();
        if (model.codebook.alphabet_size() == 1) {
            // Single-symbol language: the continuation is forced, training
            // would change nothing.
            const double center_len =
                std::max(1.0, model.codebook.centers[0].first * model.codebook.scale_len);
            const auto per = static_cast<std::size_t>(center_len);
            predicted.assign(std::min(cfg.forecast_max_symbols, span_samples / per + 1), 0);
        } else {
            std::size_t window = cfg.train.window;
            if (n_sym < window + 2) window = n_sym >= 3 ? n_sym - 2 : 0;
            if (window == 0) {
                // Too few segments to train on; repeat the last symbol.
                predicted.assign(std::min<std::size_t>(cfg.forecast_max_symbols, span_samples),
                                 model.symbols.back());
            } else {
                GruNetwork net = make_gru_network(model.codebook.alphabet_size(), cfg.gru_layers,
                                                  cfg.gru_hidden, seed);
                TrainConfig tc = cfg.train;
                tc.window = window;
                tc.seed = seed;
                train(net, model.symbols, tc);
                predicted = forecast_until_span(net, model.symbols, window, model, span_samples,
                                                cfg.forecast_max_symbols);
            }
        }

        SymbolicModel forecast_model = model;
        forecast_model.symbols = std::move(predicted);
        std::vector<SegmentTuple> tuples = inverse_digitize(forecast_model);
        TimeSeries trajectory = inverse_compress(tuples, anchor, point.t_now, dt);
        return ModelTrajectory{seed, std::move(trajectory)};
    };

    const auto n = static_cast<std::size_t>(cfg.n_models);
    std::vector<std::optional<ModelTrajectory>> slots(n);
    if (jobs <= 1 || cfg.n_models == 1) {
        for (int m = 1; m <= cfg.n_models; ++m) slots[static_cast<std::size_t>(m - 1)] = build_one(m);
    } else {
        // Each model's result depends only on its own seed, so a strided
        // fan-out joined in model order is byte-identical to the serial run.
        const int workers = std::min(jobs, cfg.n_models);
        std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (int m = 1 + w; m <= cfg.n_models; m += workers)
                        slots[static_cast<std::size_t>(m - 1)] = build_one(m);
                } catch (...) {
                    errors[static_cast<std::size_t>(w)] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        for (const auto& err : errors)
            if (err) std::rethrow_exception(err);
    }

    std::vector<ModelTrajectory> out;
    out.reserve(n);
    for (auto& slot : slots) out.push_back(std::move(*slot));
    return out;
}

RulEstimate rul_from_trajectories(const std::vector<ModelTrajectory>& trajectories,
                                  double t_now, double ft) {
    if (trajectories.empty()) throw InsufficientHistoryError("no trajectories to evaluate");

    std::vector<double> samples;
    samples.reserve(trajectories.size());
    for (const auto& traj : trajectories) {
        const std::optional<double> eol = trajectory_to_eol(traj.trajectory, ft);
        if (eol) samples.push_back(*eol - t_now);
    }
    const std::size_t excluded = trajectories.size() - samples.size();
    if (excluded * 2 > trajectories.size())
        throw AllModelsNonCrossingError(
            std::to_string(excluded) + " of " + std::to_string(trajectories.size()) +
            " forecasts never reach threshold " + std::to_string(ft));

    RulEstimate estimate;
    estimate.samples = std::move(samples);
    estimate.excluded_count = excluded;
    estimate.kde = kde_mode(estimate.samples);
    estimate.rul_mode = estimate.kde.mode;
    return estimate;
}

RulEstimate predict_rul(const PrognosticsPoint& point, double ft, const RulConfig& cfg,
                        double horizon_hours) {
    double horizon = horizon_hours;
    if (!(horizon > 0.0))
        horizon = cfg.forecast_span_factor * (point.t_now - point.history.t0());
    const auto trajectories = build_ensemble_trajectories(point, cfg, horizon);
    return rul_from_trajectories(trajectories, point.t_now, ft);
}

void write_rul_report_json(const std::string& path, const RulEstimate& estimate,
                           double t_now, double ft) {
    nlohmann::ordered_json doc;
    doc["t_now"] = t_now;
    doc["ft"] = ft;
    doc["samples"] = estimate.samples;
    doc["excluded"] = estimate.excluded_count;
    doc["bandwidth"] = estimate.kde.bandwidth;
    doc["rul_mode"] = estimate.rul_mode;
    doc["eol_mode"] = t_now + estimate.rul_mode;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << doc.dump(2) << '\n';
    if (!out) throw Error("write failed for '" + path + "'");
}

}  // namespace fcprog
