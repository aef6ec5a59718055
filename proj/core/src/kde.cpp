#include "fcprog/kde.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fcprog/errors.hpp"

namespace fcprog {

namespace {

constexpr std::size_t kGridSize = 512;

double quantile_sorted(const std::vector<double>& sorted, double p) {
    const std::size_t n = sorted.size();
    if (n == 1) return sorted[0];
    const double pos = p * static_cast<double>(n - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(lo);
    if (lo + 1 >= n) return sorted[n - 1];
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

double kde_density_at(const std::vector<double>& samples, double bandwidth, double x) {
    const double norm = 1.0 / (static_cast<double>(samples.size()) * bandwidth *
                               std::sqrt(2.0 * std::numbers::pi));
    double sum = 0.0;
    for (double s : samples) {
        const double u = (x - s) / bandwidth;
        sum += std::exp(-0.5 * u * u);
    }
    return norm * sum;
}

KdeResult kde_mode(const std::vector<double>& samples) {
    if (samples.empty()) throw EmptySamplesError("density estimate needs at least one sample");
    const std::size_t n = samples.size();

    std::vector<double> sorted = samples;
    std::sort(sorted.begin(), sorted.end());
    const double lo = sorted.front();
    const double hi = sorted.back();
    const double range = hi - lo;

    double h;
    if (range == 0.0) {
        h = 1.0;
    } else {
        double mean = 0.0;
        for (double s : sorted) mean += s;
        mean /= static_cast<double>(n);
        double var = 0.0;
        for (double s : sorted) var += (s - mean) * (s - mean);
        var /= static_cast<double>(n - 1);
        const double sigma = std::sqrt(var);
        const double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
        h = 0.9 * std::min(sigma, iqr / 1.34) * std::pow(static_cast<double>(n), -0.2);
        h = std::max(h, 1e-6 * range);
    }

    KdeResult result;
    result.bandwidth = h;
    result.grid.resize(kGridSize);
    result.pdf.resize(kGridSize);
    const double g_lo = lo - 4.0 * h;
    const double g_hi = hi + 4.0 * h;
    const double step = (g_hi - g_lo) / static_cast<double>(kGridSize - 1);
    for (std::size_t i = 0; i < kGridSize; ++i) {
        result.grid[i] = g_lo + static_cast<double>(i) * step;
        result.pdf[i] = kde_density_at(sorted, h, result.grid[i]);
    }

    if (range == 0.0) {
        // A single kernel position: the true peak sits between grid points,
        // so report the sample value itself.
        result.mode = lo;
        return result;
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < kGridSize; ++i)
        if (result.pdf[i] > result.pdf[best]) best = i;
    result.mode = result.grid[best];
    return result;
}

}  // namespace fcprog
