#include "fcprog/abba.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include <nlohmann/json.hpp>

#include "fcprog/kmeans.hpp"

namespace fcprog {

namespace {

// Sum of squared first natural numbers: 1^2 + ... + m^2.
double sum_squares(std::size_t m) {
    const double md = static_cast<double>(m);
    return md * (md + 1.0) * (2.0 * md + 1.0) / 6.0;
}

double population_std(const std::vector<double>& v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    var /= static_cast<double>(v.size());
    return std::sqrt(var);
}

}  // namespace

double chord_sse(const std::vector<double>& values, std::size_t start, std::size_t len) {
    const double y0 = values[start];
    const double inc = values[start + len] - y0;
    double sse = 0.0;
    for (std::size_t j = 1; j < len; ++j) {
        const double chord = y0 + inc * static_cast<double>(j) / static_cast<double>(len);
        const double d = values[start + j] - chord;
        sse += d * d;
    }
    return sse;
}

CompressionResult compress_values(const std::vector<double>& values, double tol) {
    if (!(tol > 0.0)) throw BadSpecError("compression tolerance must be > 0");
    if (values.size() < 2) throw TooShortError("compression needs at least 2 samples");
    const std::size_t n = values.size();
    const double tol2 = tol * tol;

    CompressionResult out{{}, values[0]};
    std::size_t s = 0;
    while (s < n - 1) {
        std::size_t len = 1;
        // Running sums over interior offsets j = 1..len-1 of d_j = y[s+j]-y[s]:
        // s1 = sum d_j^2, s2 = sum j*d_j. Chord SSE for a candidate length L is
        // s1 - 2*(d_L/L)*s2 + (d_L/L)^2 * sum j^2, updated in O(1) per growth.
        double s1 = 0.0;
        double s2 = 0.0;
        while (s + len + 1 <= n - 1) {
            const std::size_t cand = len + 1;
            const double d_interior = values[s + len] - values[s];
            const double s1_next = s1 + d_interior * d_interior;
            const double s2_next = s2 + static_cast<double>(len) * d_interior;
            const double d_end = values[s + cand] - values[s];
            const double slope = d_end / static_cast<double>(cand);
            const double sse = s1_next - 2.0 * slope * s2_next + slope * slope * sum_squares(cand - 1);
            if (sse <= static_cast<double>(cand) * tol2) {
                len = cand;
                s1 = s1_next;
                s2 = s2_next;
            } else {
                break;
            }
        }
        out.tuples.push_back({len, values[s + len] - values[s]});
        s += len;
    }
    return out;
}

CompressionResult compress(const TimeSeries& series, double tol) {
    return compress_values(series.values(), tol);
}

SymbolicModel digitize(const std::vector<SegmentTuple>& tuples, std::size_t max_k,
                       double tol, std::uint64_t seed, double start_value) {
    if (tuples.empty()) throw TooShortError("digitization needs at least one tuple");
    if (max_k == 0) throw BadSpecError("max_k must be >= 1");
    const std::size_t m = tuples.size();

    std::vector<double> lens(m), incs(m);
    for (std::size_t i = 0; i < m; ++i) {
        lens[i] = static_cast<double>(tuples[i].len);
        incs[i] = tuples[i].inc;
    }
    double scale_len = population_std(lens);
    double scale_inc = population_std(incs);
    if (scale_len == 0.0) scale_len = 1.0;
    if (scale_inc == 0.0) scale_inc = 1.0;

    std::vector<std::vector<double>> points(m, std::vector<double>(2));
    for (std::size_t i = 0; i < m; ++i) {
        points[i][0] = lens[i] / scale_len;
        points[i][1] = incs[i] / scale_inc;
    }

    const double budget = static_cast<double>(m) * std::max(tol, 0.05);
    const std::size_t k_cap = std::min(max_k, m);
    KMeansResult chosen{{}, {}, std::numeric_limits<double>::infinity()};
    bool found = false;
    for (std::size_t k = 1; k <= k_cap; ++k) {
        KMeansResult run = kmeans(points, k, seed);
        if (run.wcss < chosen.wcss) chosen = run;
        if (run.wcss <= budget) {
            chosen = std::move(run);
            found = true;
            break;
        }
    }
    (void)found;  // fallback is simply the lowest-WCSS run seen

    // Relabel clusters by first appearance so symbol 0 is the first segment's
    // cluster regardless of k-means internals.
    const std::size_t k = chosen.centers.size();
    std::vector<std::size_t> relabel(k, k);
    std::vector<std::size_t> order;
    order.reserve(k);
    for (std::size_t c : chosen.assignment) {
        if (relabel[c] == k) {
            relabel[c] = order.size();
            order.push_back(c);
        }
    }
    // Clusters that lost every point during Lloyd updates keep tail labels.
    for (std::size_t c = 0; c < k; ++c) {
        if (relabel[c] == k) {
            relabel[c] = order.size();
            order.push_back(c);
        }
    }

    SymbolicModel model;
    model.start_value = start_value;
    model.tolerance = tol;
    model.codebook.scale_len = scale_len;
    model.codebook.scale_inc = scale_inc;
    model.codebook.centers.resize(k);
    for (std::size_t s = 0; s < k; ++s) {
        const auto& c = chosen.centers[order[s]];
        model.codebook.centers[s] = {c[0], c[1]};
    }
    model.symbols.resize(m);
    for (std::size_t i = 0; i < m; ++i) model.symbols[i] = relabel[chosen.assignment[i]];
    return model;
}

std::vector<SegmentTuple> inverse_digitize(const SymbolicModel& model) {
    std::vector<SegmentTuple> out;
    out.reserve(model.symbols.size());
    double running = 0.0;
    long long emitted = 0;
    for (std::size_t s : model.symbols) {
        if (s >= model.codebook.centers.size())
            throw UnknownSymbolError("symbol " + std::to_string(s) + " exceeds alphabet");
        const auto& c = model.codebook.centers[s];
        const double len_real = c.first * model.codebook.scale_len;
        const double inc = c.second * model.codebook.scale_inc;
        running += len_real;
        long long len = std::llround(running) - emitted;
        if (len < 1) len = 1;
        emitted += len;
        out.push_back({static_cast<std::size_t>(len), inc});
    }
    return out;
}

std::vector<double> inverse_compress_values(const std::vector<SegmentTuple>& tuples,
                                            double start_value) {
    if (tuples.empty()) throw TooShortError("inverse compression needs at least one tuple");
    std::size_t total = 0;
    for (const auto& t : tuples) total += t.len;

    std::vector<double> out(total + 1);
    out[0] = start_value;
    std::size_t pos = 0;
    double level = start_value;
    for (const auto& t : tuples) {
        for (std::size_t j = 1; j <= t.len; ++j)
            out[pos + j] = level + t.inc * static_cast<double>(j) / static_cast<double>(t.len);
        pos += t.len;
        level += t.inc;
        out[pos] = level;  // keep breakpoints exact
    }
    return out;
}

TimeSeries inverse_compress(const std::vector<SegmentTuple>& tuples, double start_value,
                            double t0, double dt) {
    return TimeSeries(t0, dt, inverse_compress_values(tuples, start_value));
}

void write_symbolic_model_json(const std::string& path, const SymbolicModel& model) {
    nlohmann::ordered_json doc;
    doc["tolerance"] = model.tolerance;
    doc["start_value"] = model.start_value;
    doc["scale_len"] = model.codebook.scale_len;
    doc["scale_inc"] = model.codebook.scale_inc;
    auto centers = nlohmann::ordered_json::array();
    for (const auto& [len, inc] : model.codebook.centers) centers.push_back({len, inc});
    doc["centers"] = std::move(centers);
    doc["symbols"] = model.symbols;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << doc.dump(2) << '\n';
    if (!out) throw Error("write failed for '" + path + "'");
}

SymbolicModel read_symbolic_model_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad model JSON: ") + e.what());
    }
    SymbolicModel model;
    try {
        model.tolerance = doc.at("tolerance").get<double>();
        model.start_value = doc.at("start_value").get<double>();
        model.codebook.scale_len = doc.at("scale_len").get<double>();
        model.codebook.scale_inc = doc.at("scale_inc").get<double>();
        for (const auto& c : doc.at("centers"))
            model.codebook.centers.emplace_back(c.at(0).get<double>(), c.at(1).get<double>());
        model.symbols = doc.at("symbols").get<std::vector<std::size_t>>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad model JSON: ") + e.what());
    }
    return model;
}

}  // namespace fcprog
