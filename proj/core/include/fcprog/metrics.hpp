#pragma once

#include <string>
#include <utility>
#include <vector>

namespace fcprog {

struct MetricConfig {
    double alpha_low = 0.2;
    double alpha_up = 0.1;
};

/// Fixed-width confidence region around the true RUL, scaled by the true
/// end of life: [rul - alpha_low*eol, rul + alpha_up*eol]. Bounds may be
/// negative; they are not clipped.
std::pair<double, double> cr_ph_bounds(double rul_true, double eol_true,
                                       const MetricConfig& cfg);

/// Shrinking confidence region proportional to the remaining life:
/// [rul*(1 - alpha_low), rul*(1 + alpha_up)].
std::pair<double, double> alpha_lambda_bounds(double rul_true, const MetricConfig& cfg);

/// 1 - |rul_true - rul_pred| / rul_true, unclipped (negative when the error
/// exceeds the true RUL). Throws ZeroTrueRulError at rul_true = 0.
double relative_accuracy(double rul_true, double rul_pred);

struct EvalEntry {
    double t;         // hours
    double rul_true;  // hours
    double rul_pred;  // hours
    bool in_cr_ph;
    bool in_alpha_lambda;
    double ra;
};

/// Earliest time from which every later prediction (including that one)
/// stays inside its confidence region; horizon = eol_true minus that time,
/// or 0 when no suffix qualifies. Entries must be ordered by time.
double prognostics_horizon(const std::vector<EvalEntry>& entries, double eol_true);

struct EvaluationRecord {
    double ft;
    double eol_true;
    std::vector<EvalEntry> entries;
    double ph;
    double mean_ra;
    double alpha_lambda_pass_rate;
};

/// Builds the per-point entries for one failure threshold from (t, rul_pred)
/// pairs; points at or past the true end of life are dropped (their true RUL
/// is not positive).
EvaluationRecord evaluate_threshold(double ft, double eol_true,
                                    const std::vector<std::pair<double, double>>& predictions,
                                    const MetricConfig& cfg);

/// CSV rows: ft,t,rul_true,rul_pred,in_cr_ph,in_alpha_lambda,ra.
void write_evaluation_csv(const std::string& path,
                          const std::vector<EvaluationRecord>& records);

/// JSON array of {ft, eol_true, ph, mean_ra, alpha_lambda_pass_rate}.
void write_evaluation_summary_json(const std::string& path,
                                   const std::vector<EvaluationRecord>& records);

}  // namespace fcprog
