#include "fcprog/emd.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "fcprog/csv_io.hpp"
#include "fcprog/spline.hpp"

namespace fcprog {

namespace {

// Scans runs of equal values so plateaus resolve to one midpoint extremum.
Extrema find_extrema_impl(const std::vector<double>& v) {
    const std::size_t n = v.size();
    if (n < 3) throw TooShortError("extrema detection needs at least 3 samples");
    Extrema out;
    std::size_t i = 1;
    while (i + 1 <= n - 1) {
        if (v[i] == v[i - 1]) { ++i; continue; }
        std::size_t j = i;
        while (j + 1 <= n - 1 && v[j + 1] == v[i]) ++j;
        if (j > n - 2) break;
        const std::size_t mid = (i + j) / 2;
        if (v[i] > v[i - 1] && v[j] > v[j + 1]) out.maxima.push_back({mid, v[mid]});
        if (v[i] < v[i - 1] && v[j] < v[j + 1]) out.minima.push_back({mid, v[mid]});
        i = j + 1;
    }
    return out;
}

// Knot arrays in index coordinates with the first/last two extrema mirrored
// about the series ends (indices 0 and n-1).
void mirrored_knots(const std::vector<Extremum>& ex, std::size_t n,
                    std::vector<double>& xs, std::vector<double>& ys) {
    const double last = static_cast<double>(n - 1);
    xs.clear();
    ys.clear();
    xs.reserve(ex.size() + 4);
    ys.reserve(ex.size() + 4);
    xs.push_back(-static_cast<double>(ex[1].index));
    ys.push_back(ex[1].value);
    xs.push_back(-static_cast<double>(ex[0].index));
    ys.push_back(ex[0].value);
    for (const auto& e : ex) {
        xs.push_back(static_cast<double>(e.index));
        ys.push_back(e.value);
    }
    const auto& a = ex[ex.size() - 1];
    const auto& b = ex[ex.size() - 2];
    xs.push_back(2.0 * last - static_cast<double>(a.index));
    ys.push_back(a.value);
    xs.push_back(2.0 * last - static_cast<double>(b.index));
    ys.push_back(b.value);
}

std::vector<double> envelope_values(const std::vector<Extremum>& ex, std::size_t n) {
    std::vector<double> xs, ys;
    mirrored_knots(ex, n, xs, ys);
    CubicSpline spline(std::move(xs), std::move(ys));
    std::vector<double> grid(n);
    for (std::size_t i = 0; i < n; ++i) grid[i] = static_cast<double>(i);
    return spline.evaluate_sorted(grid);
}

// Mean envelope on raw values; empty result signals insufficient extrema.
bool mean_envelope_values(const std::vector<double>& v, std::vector<double>& out) {
    if (v.size() < 3) return false;
    Extrema ex = find_extrema_impl(v);
    if (ex.maxima.size() < 2 || ex.minima.size() < 2) return false;
    std::vector<double> upper = envelope_values(ex.maxima, v.size());
    std::vector<double> lower = envelope_values(ex.minima, v.size());
    out.resize(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = 0.5 * (upper[i] + lower[i]);
    return true;
}

bool imf_criterion_holds(const std::vector<double>& v) {
    Extrema ex = find_extrema_impl(v);
    const std::size_t extrema = ex.maxima.size() + ex.minima.size();
    const std::size_t zeros = count_zero_crossings(v);
    const std::size_t diff = extrema > zeros ? extrema - zeros : zeros - extrema;
    return diff <= 1;
}

}  // namespace

Extrema find_extrema(const std::vector<double>& values) {
    return find_extrema_impl(values);
}

Extrema find_extrema(const TimeSeries& series) {
    return find_extrema_impl(series.values());
}

std::size_t count_zero_crossings(const std::vector<double>& values) {
    std::size_t crossings = 0;
    int last_sign = 0;
    for (double v : values) {
        const int sign = v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
        if (sign == 0) continue;
        if (last_sign != 0 && sign != last_sign) ++crossings;
        last_sign = sign;
    }
    return crossings;
}

TimeSeries mean_envelope(const TimeSeries& series) {
    std::vector<double> out;
    if (!mean_envelope_values(series.values(), out))
        throw InsufficientExtremaError("mean envelope needs at least 2 maxima and 2 minima");
    return series.with_values(std::move(out));
}

SiftResult sift_one_imf(const TimeSeries& series, const SiftConfig& cfg) {
    std::vector<double> h = series.values();
    std::vector<double> mean;
    if (!mean_envelope_values(h, mean))
        throw InsufficientExtremaError("cannot sift: input does not admit envelopes");

    int iters = 0;
    bool hit_cap = false;
    while (true) {
        ++iters;
        double sd_num = 0.0;
        double sd_den = 0.0;
        for (std::size_t i = 0; i < h.size(); ++i) {
            sd_num += mean[i] * mean[i];
            sd_den += h[i] * h[i];
            h[i] -= mean[i];
        }
        const double sd = sd_den > 0.0 ? sd_num / sd_den : 0.0;
        if (sd < cfg.sd_threshold && imf_criterion_holds(h)) break;
        if (iters >= cfg.max_sift_iters) {
            hit_cap = true;
            break;
        }
        if (!mean_envelope_values(h, mean)) break;
    }

    std::vector<double> residual(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) residual[i] = series[i] - h[i];
    return SiftResult{series.with_values(std::move(h)), series.with_values(std::move(residual)),
                      iters, hit_cap};
}

TimeSeries ImfSet::reconstruct() const {
    std::vector<double> sum = residual.values();
    for (const auto& imf : imfs)
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += imf[i];
    return residual.with_values(std::move(sum));
}

ImfSet decompose(const TimeSeries& series, const SiftConfig& cfg,
                 const ResidualStopRule& stop) {
    ImfSet set{{}, series, series.size(), {}, {}};
    while (static_cast<int>(set.imfs.size()) < cfg.max_imfs) {
        if (set.residual.size() < 3) break;
        Extrema ex = find_extrema(set.residual);
        if (ex.maxima.size() < 2 || ex.minima.size() < 2) break;
        SiftResult sift = sift_one_imf(set.residual, cfg);
        set.imfs.push_back(std::move(sift.imf));
        set.residual = std::move(sift.residual);
        set.sift_iterations.push_back(sift.iterations);
        set.sift_hit_cap.push_back(sift.hit_iteration_cap);
        if (stop && stop(set.residual)) break;
    }
    return set;
}

void write_imfs_csv(const std::string& path, const ImfSet& set) {
    std::vector<std::string> header{"time_h"};
    for (std::size_t k = 0; k < set.imfs.size(); ++k)
        header.push_back("imf_" + std::to_string(k + 1));
    header.push_back("residual");

    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (c) out << ',';
        out << header[c];
    }
    out << '\n';
    for (std::size_t i = 0; i < set.residual.size(); ++i) {
        out << format_double(set.residual.time_at(i));
        for (const auto& imf : set.imfs) out << ',' << format_double(imf[i]);
        out << ',' << format_double(set.residual[i]) << '\n';
    }
    if (!out) throw Error("write failed for '" + path + "'");
}

void write_imfs_metadata_json(const std::string& path, const ImfSet& set) {
    nlohmann::ordered_json meta;
    meta["imf_count"] = set.imfs.size();
    meta["source_len"] = set.source_len;
    meta["sift_iterations"] = set.sift_iterations;
    std::vector<bool> caps(set.sift_hit_cap.begin(), set.sift_hit_cap.end());
    meta["sift_hit_iteration_cap"] = caps;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << meta.dump(2) << '\n';
    if (!out) throw Error("write failed for '" + path + "'");
}

}  // namespace fcprog
