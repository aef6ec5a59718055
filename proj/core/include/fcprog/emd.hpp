#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "fcprog/timeseries.hpp"

namespace fcprog {

/// One extremum: sample index and value at that index.
struct Extremum {
    std::size_t index;
    double value;
};

struct Extrema {
    std::vector<Extremum> maxima;
    std::vector<Extremum> minima;
};

/// Strict interior extrema; plateaus contribute their midpoint sample.
/// Throws TooShortError when the series has fewer than 3 samples.
Extrema find_extrema(const TimeSeries& series);
Extrema find_extrema(const std::vector<double>& values);

/// Sign changes between consecutive nonzero samples; exact zeros join the
/// crossing they sit on instead of counting separately.
std::size_t count_zero_crossings(const std::vector<double>& values);

struct SiftConfig {
    int max_sift_iters = 100;
    double sd_threshold = 0.2;
    int max_imfs = 32;
};

/// Mean of the upper and lower natural-spline envelopes. Both envelopes
/// extend the first and last two extrema mirrored about the series ends
/// before fitting. Throws InsufficientExtremaError when a side has fewer
/// than two extrema.
TimeSeries mean_envelope(const TimeSeries& series);

struct SiftResult {
    TimeSeries imf;
    TimeSeries residual;
    int iterations;
    bool hit_iteration_cap;
};

/// Repeatedly subtracts the mean envelope until the normalized squared
/// difference between successive candidates drops below cfg.sd_threshold
/// while extrema and zero-crossing counts differ by at most one, or the
/// iteration cap is reached (accepted with a flag, not an error).
/// residual = series - imf holds exactly per sample.
SiftResult sift_one_imf(const TimeSeries& series, const SiftConfig& cfg);

/// Decides after each extracted component whether decomposition should stop
/// early based on the current residual. Empty rule means no early stop.
using ResidualStopRule = std::function<bool(const TimeSeries& residual)>;

struct ImfSet {
    std::vector<TimeSeries> imfs;
    TimeSeries residual;
    std::size_t source_len;
    std::vector<int> sift_iterations;
    std::vector<bool> sift_hit_cap;

    TimeSeries reconstruct() const;
};

/// Extracts components from successive residuals until the residual has
/// fewer than two maxima or minima, cfg.max_imfs is reached, or the stop
/// rule fires (tested after each extraction). Sum of parts reproduces the
/// input within 1e-8 relative L2.
ImfSet decompose(const TimeSeries& series, const SiftConfig& cfg,
                 const ResidualStopRule& stop = {});

/// CSV columns: time_h, imf_1..imf_n, residual.
void write_imfs_csv(const std::string& path, const ImfSet& set);

/// Sift iteration counts and cap flags per component.
void write_imfs_metadata_json(const std::string& path, const ImfSet& set);

}  // namespace fcprog
