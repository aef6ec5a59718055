#pragma once

#include <vector>

namespace fcprog {

struct KdeResult {
    std::vector<double> grid;  // 512 ascending evaluation points
    std::vector<double> pdf;
    double bandwidth;
    double mode;
};

/// Gaussian kernel density estimate with Silverman bandwidth
/// h = 0.9 * min(sigma, IQR/1.34) * n^(-1/5), floored at 1e-6 of the sample
/// range (h = 1.0 when every sample coincides). The grid spans
/// [min - 4h, max + 4h] so the trapezoidal integral captures the tail mass.
/// Mode is the grid argmax (ties to the smaller value); coincident samples
/// return their common value exactly.
KdeResult kde_mode(const std::vector<double>& samples);

/// Density at one point, same kernel and bandwidth; brute-force cross-checks.
double kde_density_at(const std::vector<double>& samples, double bandwidth, double x);

}  // namespace fcprog
