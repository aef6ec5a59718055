#include "fcprog/hi_extract.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>

#include <nlohmann/json.hpp>

#include "fcprog/hilbert.hpp"

namespace fcprog {

namespace {

bool admits_envelopes(const TimeSeries& series) {
    if (series.size() < 3) return false;
    Extrema ex = find_extrema(series);
    return ex.maxima.size() >= 2 && ex.minima.size() >= 2;
}

}  // namespace

double representative_if(const TimeSeries& residual) {
    const std::size_t n = residual.size();
    const double mean = std::accumulate(residual.values().begin(), residual.values().end(), 0.0) /
                        static_cast<double>(n);
    std::vector<double> centered(n);
    for (std::size_t i = 0; i < n; ++i) centered[i] = residual[i] - mean;

    AnalyticSignal sig = hilbert_transform(residual.with_values(std::move(centered)));
    InstFrequency inst = instantaneous_frequency(sig);

    const std::size_t margin = n / 20;
    const std::size_t begin = margin;
    const std::size_t end = n - margin;

    std::vector<std::pair<double, double>> weighted;  // (freq, amplitude weight)
    weighted.reserve(end - begin);
    double total = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
        weighted.emplace_back(inst.freq_hz[i], sig.amplitude[i]);
        total += sig.amplitude[i];
    }
    if (total <= 0.0) return 0.0;

    std::sort(weighted.begin(), weighted.end());
    double cum = 0.0;
    for (const auto& [freq, w] : weighted) {
        cum += w;
        if (cum >= 0.5 * total) return freq;
    }
    return weighted.back().first;
}

HiExtractionResult extract_hi(const TimeSeries& voltage, double threshold_hz,
                              const SiftConfig& cfg) {
    if (!(threshold_hz > 0.0)) throw BadSpecError("IF threshold must be > 0");

    HiExtractionResult result{voltage, 0, {}, threshold_hz, false};
    while (static_cast<int>(result.imf_count) < cfg.max_imfs) {
        if (!admits_envelopes(result.hi)) {
            if (result.imf_count == 0 && result.hi.size() >= 8) {
                const double rif = representative_if(result.hi);
                result.if_summary.push_back(rif);
                result.threshold_met = rif < threshold_hz;
            }
            break;
        }
        SiftResult sift = sift_one_imf(result.hi, cfg);
        result.hi = std::move(sift.residual);
        ++result.imf_count;
        const double rif = representative_if(result.hi);
        result.if_summary.push_back(rif);
        if (rif < threshold_hz) {
            result.threshold_met = true;
            break;
        }
    }
    return result;
}

void write_extraction_report_json(const std::string& path, const HiExtractionResult& result) {
    nlohmann::ordered_json doc;
    doc["imf_count"] = result.imf_count;
    doc["threshold_hz"] = result.threshold_hz;
    doc["threshold_met"] = result.threshold_met;
    doc["if_summary"] = result.if_summary;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << doc.dump(2) << '\n';
    if (!out) throw Error("write failed for '" + path + "'");
}

}  // namespace fcprog
