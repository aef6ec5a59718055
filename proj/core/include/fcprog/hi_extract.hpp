#pragma once

#include <string>
#include <vector>

#include "fcprog/emd.hpp"
#include "fcprog/timeseries.hpp"

namespace fcprog {

struct HiExtractionResult {
    TimeSeries hi;
    std::size_t imf_count;
    std::vector<double> if_summary;  // representative IF after each extraction
    double threshold_hz;
    bool threshold_met;
};

/// Scalar reduction of a residual's oscillation rate: mean-removed analytic
/// signal, then the amplitude-weighted median of per-sample instantaneous
/// frequency over the interior 90% of samples.
double representative_if(const TimeSeries& residual);

/// Strips one component at a time, re-testing the remaining residual until
/// its representative IF drops below threshold_hz, the residual stops
/// admitting envelopes, or cfg.max_imfs is reached. The accepted residual is
/// the health indicator. A never-met threshold sets threshold_met = false
/// but still returns the final residual.
HiExtractionResult extract_hi(const TimeSeries& voltage, double threshold_hz,
                              const SiftConfig& cfg);

/// JSON report: imf_count, per-iteration IF values, threshold, met flag.
void write_extraction_report_json(const std::string& path, const HiExtractionResult& result);

}  // namespace fcprog
