#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fcprog/timeseries.hpp"

namespace fcprog {

/// Analytic extension z(t) = real + i*imag of a real signal, with per-sample
/// amplitude sqrt(real^2 + imag^2) and unwrapped phase atan2(imag, real).
struct AnalyticSignal {
    TimeSeries real;
    TimeSeries imag;
    std::vector<double> amplitude;
    std::vector<double> phase;
};

/// Frequency-domain analytic signal: positive frequencies doubled, negative
/// zeroed, DC and Nyquist kept once. Requires length >= 8.
AnalyticSignal hilbert_transform(const TimeSeries& series);

struct InstFrequency {
    std::vector<double> freq_hz;
    std::vector<bool> reliable;  // amplitude above floor
    double amplitude_floor;
};

/// Phase derivative over time in seconds, central differences interior,
/// one-sided at the ends. Samples below amplitude_floor (1e-6 of the peak
/// amplitude) are flagged unreliable; an all-zero signal flags every sample.
InstFrequency instantaneous_frequency(const AnalyticSignal& sig);

/// Log-spaced frequency bin edges (count+1 edges covering [lo, hi]).
std::vector<double> log_spaced_bin_edges(double lo, double hi, std::size_t count);

/// Per-sample energy: amplitude^2 deposited at the sample's IF bin and
/// integrated over the bins (sum of deposits times bin width). Throws
/// EmptyBinsError when no reliable IF lands inside the grid.
std::vector<double> instantaneous_energy(const AnalyticSignal& sig,
                                         const std::vector<double>& bin_edges);

struct SpectrumTriplet {
    std::size_t t_idx;
    std::size_t f_idx;
    double energy;
};

struct HilbertSpectrum {
    std::vector<double> times;       // hours
    std::vector<double> freq_centers;  // Hz, log-spaced bin centers
    std::vector<double> bin_edges;
    std::vector<SpectrumTriplet> triplets;  // sorted by (t_idx, f_idx)
};

/// Each component deposits amplitude^2 at (t, IF bin). Bin edges are
/// log-spaced over the union of reliable IFs across components.
HilbertSpectrum build_spectrum(const std::vector<TimeSeries>& components,
                               std::size_t freq_bins);

/// Sparse JSON {times, freqs, triplets:[[t_idx,f_idx,energy],...]}.
void write_spectrum_json(const std::string& path, const HilbertSpectrum& spectrum);

/// Dense CSV: one row per time sample, one column per frequency bin.
void write_spectrum_csv(const std::string& path, const HilbertSpectrum& spectrum);

}  // namespace fcprog
