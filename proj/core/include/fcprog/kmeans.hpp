#pragma once

#include <cstdint>
#include <vector>

namespace fcprog {

struct KMeansResult {
    std::vector<std::vector<double>> centers;  // k rows of dim values
    std::vector<std::size_t> assignment;       // one entry per point
    double wcss;                               // total within-cluster sum of squares
};

/// Seeded k-means++ with Lloyd refinement; keeps the lowest-inertia run over
/// `restarts` attempts (earliest run wins ties). Assignment ties go to the
/// lowest center index, so results are reproducible for a fixed seed.
KMeansResult kmeans(const std::vector<std::vector<double>>& points, std::size_t k,
                    std::uint64_t seed, int restarts = 20, int max_iters = 300);

}  // namespace fcprog
