#include "fcprog/kmeans.hpp"

#include <algorithm>
#include <limits>

#include "fcprog/errors.hpp"
#include "fcprog/rng.hpp"

namespace fcprog {

namespace {

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t d = 0; d < a.size(); ++d) {
        const double diff = a[d] - b[d];
        s += diff * diff;
    }
    return s;
}

KMeansResult run_once(const std::vector<std::vector<double>>& points, std::size_t k,
                      Rng& rng, int max_iters) {
    const std::size_t n = points.size();
    const std::size_t dim = points[0].size();

    // k-means++ seeding: next center drawn proportionally to squared distance
    // from the nearest chosen center.
    std::vector<std::vector<double>> centers;
    centers.reserve(k);
    centers.push_back(points[rng.index(n)]);
    std::vector<double> d2(n);
    for (std::size_t i = 0; i < n; ++i) d2[i] = sq_dist(points[i], centers[0]);
    while (centers.size() < k) {
        double total = 0.0;
        for (double v : d2) total += v;
        std::size_t pick;
        if (total <= 0.0) {
            pick = rng.index(n);
        } else {
            const double r = rng.uniform01() * total;
            double cum = 0.0;
            pick = n - 1;
            for (std::size_t i = 0; i < n; ++i) {
                cum += d2[i];
                if (cum >= r) {
                    pick = i;
                    break;
                }
            }
        }
        centers.push_back(points[pick]);
        for (std::size_t i = 0; i < n; ++i)
            d2[i] = std::min(d2[i], sq_dist(points[i], centers.back()));
    }

    std::vector<std::size_t> assignment(n, 0);
    for (int iter = 0; iter < max_iters; ++iter) {
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t best = 0;
            double best_d = sq_dist(points[i], centers[0]);
            for (std::size_t c = 1; c < k; ++c) {
                const double d = sq_dist(points[i], centers[c]);
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            if (assignment[i] != best) {
                assignment[i] = best;
                changed = true;
            }
        }
        if (!changed && iter > 0) break;

        std::vector<std::vector<double>> sums(k, std::vector<double>(dim, 0.0));
        std::vector<std::size_t> counts(k, 0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t d = 0; d < dim; ++d) sums[assignment[i]][d] += points[i][d];
            ++counts[assignment[i]];
        }
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] == 0) {
                // Re-seed an empty cluster at the point farthest from its center.
                std::size_t far = 0;
                double far_d = -1.0;
                for (std::size_t i = 0; i < n; ++i) {
                    const double d = sq_dist(points[i], centers[assignment[i]]);
                    if (d > far_d) {
                        far_d = d;
                        far = i;
                    }
                }
                centers[c] = points[far];
                assignment[far] = c;
            } else {
                for (std::size_t d = 0; d < dim; ++d)
                    centers[c][d] = sums[c][d] / static_cast<double>(counts[c]);
            }
        }
    }

    double wcss = 0.0;
    for (std::size_t i = 0; i < n; ++i) wcss += sq_dist(points[i], centers[assignment[i]]);
    return KMeansResult{std::move(centers), std::move(assignment), wcss};
}

}  // namespace

KMeansResult kmeans(const std::vector<std::vector<double>>& points, std::size_t k,
                    std::uint64_t seed, int restarts, int max_iters) {
    if (points.empty()) throw ShapeMismatchError("k-means needs at least one point");
    if (k == 0 || k > points.size())
        throw ShapeMismatchError("k must be in [1, point count]");
    for (const auto& p : points)
        if (p.size() != points[0].size())
            throw ShapeMismatchError("k-means points must share one dimension");

    Rng rng(seed);
    KMeansResult best{{}, {}, std::numeric_limits<double>::infinity()};
    for (int r = 0; r < restarts; ++r) {
        KMeansResult run = run_once(points, k, rng, max_iters);
        if (run.wcss < best.wcss) best = std::move(run);
    }
    return best;
}

}  // namespace fcprog
