#include "fcprog/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <mutex>
#include <numbers>

#include <fftw3.h>
#include <nlohmann/json.hpp>

#include "fcprog/csv_io.hpp"

namespace fcprog {

namespace {

// FFTW plan creation/destruction is not thread-safe; execution is.
std::mutex& fftw_plan_mutex() {
    static std::mutex m;
    return m;
}

struct FftwBuffer {
    fftw_complex* data = nullptr;
    explicit FftwBuffer(std::size_t n) {
        data = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
        if (!data) throw std::bad_alloc();
    }
    ~FftwBuffer() { fftw_free(data); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;
};

}  // namespace

AnalyticSignal hilbert_transform(const TimeSeries& series) {
    const std::size_t n = series.size();
    if (n < 8) throw TooShortError("analytic signal needs at least 8 samples");

    FftwBuffer in(n), out(n);
    for (std::size_t i = 0; i < n; ++i) {
        in.data[i][0] = series[i];
        in.data[i][1] = 0.0;
    }

    fftw_plan fwd, bwd;
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex());
        fwd = fftw_plan_dft_1d(static_cast<int>(n), in.data, out.data, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_1d(static_cast<int>(n), out.data, in.data, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    fftw_execute(fwd);

    // One-sided spectrum: double positives, zero negatives, keep DC and
    // (for even n) Nyquist once.
    const std::size_t half = n / 2;
    for (std::size_t k = 1; k < n; ++k) {
        if (n % 2 == 0 && k == half) continue;
        if (k < half || (n % 2 == 1 && k <= half)) {
            out.data[k][0] *= 2.0;
            out.data[k][1] *= 2.0;
        } else {
            out.data[k][0] = 0.0;
            out.data[k][1] = 0.0;
        }
    }

    fftw_execute(bwd);
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex());
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
    }

    const double scale = 1.0 / static_cast<double>(n);
    std::vector<double> re(n), im(n), amp(n), phase(n);
    for (std::size_t i = 0; i < n; ++i) {
        re[i] = in.data[i][0] * scale;
        im[i] = in.data[i][1] * scale;
        amp[i] = std::hypot(re[i], im[i]);
        phase[i] = std::atan2(im[i], re[i]);
    }

    // Unwrap: remove 2*pi jumps larger than pi between neighbours.
    double offset = 0.0;
    double prev_raw = phase[0];
    for (std::size_t i = 1; i < n; ++i) {
        const double raw = phase[i];
        const double d = raw - prev_raw;
        if (d > std::numbers::pi) offset -= 2.0 * std::numbers::pi;
        else if (d < -std::numbers::pi) offset += 2.0 * std::numbers::pi;
        phase[i] = raw + offset;
        prev_raw = raw;
    }

    return AnalyticSignal{series.with_values(std::move(re)), series.with_values(std::move(im)),
                          std::move(amp), std::move(phase)};
}

InstFrequency instantaneous_frequency(const AnalyticSignal& sig) {
    const std::size_t n = sig.phase.size();
    const double dt_sec = sig.real.dt() * 3600.0;
    const double two_pi = 2.0 * std::numbers::pi;

    InstFrequency out;
    out.freq_hz.resize(n);
    out.freq_hz[0] = (sig.phase[1] - sig.phase[0]) / (dt_sec * two_pi);
    for (std::size_t i = 1; i + 1 < n; ++i)
        out.freq_hz[i] = (sig.phase[i + 1] - sig.phase[i - 1]) / (2.0 * dt_sec * two_pi);
    out.freq_hz[n - 1] = (sig.phase[n - 1] - sig.phase[n - 2]) / (dt_sec * two_pi);

    const double max_amp = *std::max_element(sig.amplitude.begin(), sig.amplitude.end());
    out.amplitude_floor = 1e-6 * max_amp;
    out.reliable.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        out.reliable[i] = sig.amplitude[i] > out.amplitude_floor;
    return out;
}

std::vector<double> log_spaced_bin_edges(double lo, double hi, std::size_t count) {
    if (!(lo > 0.0) || !(hi > 0.0) || count == 0)
        throw EmptyBinsError("log-spaced bins need positive bounds and at least one bin");
    if (hi <= lo * (1.0 + 1e-9)) {
        lo *= 0.99;
        hi *= 1.01;
    }
    std::vector<double> edges(count + 1);
    const double ratio = std::log(hi / lo);
    for (std::size_t i = 0; i <= count; ++i)
        edges[i] = lo * std::exp(ratio * static_cast<double>(i) / static_cast<double>(count));
    edges.front() = lo;
    edges.back() = hi;
    return edges;
}

namespace {

// Bin index for f, or npos when f falls outside the edges.
std::size_t locate_bin(const std::vector<double>& edges, double f) {
    if (f < edges.front() || f > edges.back()) return static_cast<std::size_t>(-1);
    if (f == edges.back()) return edges.size() - 2;
    const auto it = std::upper_bound(edges.begin(), edges.end(), f);
    return static_cast<std::size_t>(it - edges.begin()) - 1;
}

}  // namespace

std::vector<double> instantaneous_energy(const AnalyticSignal& sig,
                                         const std::vector<double>& bin_edges) {
    if (bin_edges.size() < 2) throw EmptyBinsError("need at least one frequency bin");
    InstFrequency inst = instantaneous_frequency(sig);
    const std::size_t n = inst.freq_hz.size();

    std::vector<double> energy(n, 0.0);
    bool any_reliable = false;
    bool any_in_grid = false;
    for (std::size_t i = 0; i < n; ++i) {
        if (!inst.reliable[i]) continue;
        any_reliable = true;
        const std::size_t b = locate_bin(bin_edges, inst.freq_hz[i]);
        if (b == static_cast<std::size_t>(-1)) continue;
        any_in_grid = true;
        const double width = bin_edges[b + 1] - bin_edges[b];
        energy[i] = sig.amplitude[i] * sig.amplitude[i] * width;
    }
    if (any_reliable && !any_in_grid)
        throw EmptyBinsError("frequency grid excludes every observed instantaneous frequency");
    return energy;
}

HilbertSpectrum build_spectrum(const std::vector<TimeSeries>& components,
                               std::size_t freq_bins) {
    if (components.empty())
        throw EmptyBinsError("cannot build a spectrum from zero components");
    for (std::size_t c = 1; c < components.size(); ++c)
        if (!components[0].same_grid(components[c]))
            throw ShapeMismatchError("spectrum components must share one grid");

    std::vector<AnalyticSignal> sigs;
    std::vector<InstFrequency> ifs;
    sigs.reserve(components.size());
    ifs.reserve(components.size());
    double lo = 0.0, hi = 0.0;
    bool seen = false;
    for (const auto& comp : components) {
        sigs.push_back(hilbert_transform(comp));
        ifs.push_back(instantaneous_frequency(sigs.back()));
        const auto& inst = ifs.back();
        for (std::size_t i = 0; i < inst.freq_hz.size(); ++i) {
            if (!inst.reliable[i] || !(inst.freq_hz[i] > 0.0)) continue;
            if (!seen) {
                lo = hi = inst.freq_hz[i];
                seen = true;
            } else {
                lo = std::min(lo, inst.freq_hz[i]);
                hi = std::max(hi, inst.freq_hz[i]);
            }
        }
    }
    if (!seen) throw EmptyBinsError("no component has a positive reliable instantaneous frequency");

    HilbertSpectrum spec;
    spec.bin_edges = log_spaced_bin_edges(lo, hi, freq_bins);
    spec.freq_centers.resize(freq_bins);
    for (std::size_t b = 0; b < freq_bins; ++b)
        spec.freq_centers[b] = std::sqrt(spec.bin_edges[b] * spec.bin_edges[b + 1]);
    const std::size_t n = components[0].size();
    spec.times.resize(n);
    for (std::size_t i = 0; i < n; ++i) spec.times[i] = components[0].time_at(i);

    std::vector<SpectrumTriplet> raw;
    for (std::size_t c = 0; c < components.size(); ++c) {
        const auto& inst = ifs[c];
        const auto& amp = sigs[c].amplitude;
        for (std::size_t i = 0; i < n; ++i) {
            if (!inst.reliable[i] || !(inst.freq_hz[i] > 0.0)) continue;
            const std::size_t b = locate_bin(spec.bin_edges, inst.freq_hz[i]);
            if (b == static_cast<std::size_t>(-1)) continue;
            raw.push_back({i, b, amp[i] * amp[i]});
        }
    }
    std::sort(raw.begin(), raw.end(), [](const SpectrumTriplet& a, const SpectrumTriplet& b) {
        return a.t_idx != b.t_idx ? a.t_idx < b.t_idx : a.f_idx < b.f_idx;
    });
    for (const auto& t : raw) {
        if (!spec.triplets.empty() && spec.triplets.back().t_idx == t.t_idx &&
            spec.triplets.back().f_idx == t.f_idx) {
            spec.triplets.back().energy += t.energy;
        } else {
            spec.triplets.push_back(t);
        }
    }
    return spec;
}

void write_spectrum_json(const std::string& path, const HilbertSpectrum& spectrum) {
    nlohmann::ordered_json doc;
    doc["times"] = spectrum.times;
    doc["freqs"] = spectrum.freq_centers;
    auto triplets = nlohmann::ordered_json::array();
    for (const auto& t : spectrum.triplets)
        triplets.push_back({t.t_idx, t.f_idx, t.energy});
    doc["triplets"] = std::move(triplets);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << doc.dump(2) << '\n';
    if (!out) throw Error("write failed for '" + path + "'");
}

void write_spectrum_csv(const std::string& path, const HilbertSpectrum& spectrum) {
    std::vector<std::string> header{"time_h"};
    for (double f : spectrum.freq_centers) header.push_back("f_" + format_double(f));

    std::vector<std::vector<double>> dense(spectrum.times.size(),
                                           std::vector<double>(spectrum.freq_centers.size(), 0.0));
    for (const auto& t : spectrum.triplets) dense[t.t_idx][t.f_idx] += t.energy;

    std::vector<std::vector<std::string>> rows;
    rows.reserve(dense.size());
    for (std::size_t i = 0; i < dense.size(); ++i) {
        std::vector<std::string> row{format_double(spectrum.times[i])};
        for (double e : dense[i]) row.push_back(format_double(e));
        rows.push_back(std::move(row));
    }
    write_csv(path, header, rows);
}

}  // namespace fcprog
