#pragma once

#include <string>

#include "fcprog/config.hpp"
#include "fcprog/rul.hpp"

namespace fcprog {

/// Module settings derived from the resolved pipeline config.
RulConfig rul_config_from(const PipelineConfig& cfg);

/// Writes voltage.csv, current.csv, temperature.csv, true_trend.csv and
/// synth_report.json under cfg.out_dir.
void cmd_synth(const PipelineConfig& cfg);

/// Writes imfs.csv, imfs_meta.json and spectrum.json under cfg.out_dir.
/// A signal with no positive-frequency content yields an empty spectrum.
void cmd_decompose(const PipelineConfig& cfg, const std::string& input_csv);

/// Writes hi.csv (full-life normalized) and extraction_report.json under
/// cfg.out_dir.
void cmd_extract(const PipelineConfig& cfg, const std::string& input_csv);

/// One prognostics point, every configured threshold; writes rul_report.json
/// under cfg.out_dir. The ensemble is trained once and shared across
/// thresholds.
void cmd_predict(const PipelineConfig& cfg, const std::string& hi_csv, double t_now);

/// Sweeps the configured point schedule against every threshold with truth
/// end of life taken from the full indicator; writes evaluation.csv and
/// summary.json under cfg.out_dir.
void cmd_evaluate(const PipelineConfig& cfg, const std::string& hi_csv);

}  // namespace fcprog
