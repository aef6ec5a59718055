#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fcprog/timeseries.hpp"

namespace fcprog {

/// One piecewise-linear segment: samples spanned and value change across it.
struct SegmentTuple {
    std::size_t len;  // >= 1
    double inc;
};

struct Codebook {
    std::vector<std::pair<double, double>> centers;  // (len, inc) in scaled space
    double scale_len = 1.0;
    double scale_inc = 1.0;
    std::size_t alphabet_size() const { return centers.size(); }
};

struct SymbolicModel {
    std::vector<std::size_t> symbols;
    Codebook codebook;
    double start_value = 0.0;
    double tolerance = 0.0;
};

struct CompressionResult {
    std::vector<SegmentTuple> tuples;
    double start_value;
};

/// Greedy adaptive piecewise-linear compression. A segment keeps growing
/// while the squared deviations of its interior samples from the straight
/// chord stay within len * tol^2. Breakpoint values are exact, and segment
/// lengths sum to n - 1.
CompressionResult compress(const TimeSeries& series, double tol);

/// Same compression over raw values (no grid needed).
CompressionResult compress_values(const std::vector<double>& values, double tol);

/// Recomputes one segment's chord SSE from scratch; the compression bound
/// can be re-checked against this.
double chord_sse(const std::vector<double>& values, std::size_t start, std::size_t len);

/// Clusters (len, inc) tuples scaled by their per-dimension standard
/// deviations, choosing the smallest k <= max_k whose within-cluster sum of
/// squares is at most m * max(tol, 0.05); falls back to the k with the
/// lowest sum when none qualifies. Symbols are relabeled in first-appearance
/// order so output is independent of cluster label permutation.
SymbolicModel digitize(const std::vector<SegmentTuple>& tuples, std::size_t max_k,
                       double tol, std::uint64_t seed, double start_value = 0.0);

/// Symbols back to tuples: centers un-scaled, lengths made positive integers
/// by cumulative-error rounding (running sum drift stays under one sample).
std::vector<SegmentTuple> inverse_digitize(const SymbolicModel& model);

/// Polyline through the cumulative breakpoints; output length 1 + sum(len).
TimeSeries inverse_compress(const std::vector<SegmentTuple>& tuples, double start_value,
                            double t0, double dt);
std::vector<double> inverse_compress_values(const std::vector<SegmentTuple>& tuples,
                                            double start_value);

/// JSON: {tolerance, start_value, scale_len, scale_inc, centers, symbols}.
void write_symbolic_model_json(const std::string& path, const SymbolicModel& model);
SymbolicModel read_symbolic_model_json(const std::string& path);

}  // namespace fcprog
