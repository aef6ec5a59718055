#include <doctest.h>

#include <cmath>
#include <cstddef>
#include <filesystem>
#include <numbers>
#include <vector>

#include "fcprog/abba.hpp"
#include "fcprog/rng.hpp"
#include "fcprog/timeseries.hpp"

using fcprog::SegmentTuple;
using fcprog::TimeSeries;

namespace {

constexpr double kPi = std::numbers::pi;

// Straight-chord SSE recomputed from first principles, independent of the
// incremental bookkeeping inside compress().
double oracle_chord_sse(const std::vector<double>& v, std::size_t start, std::size_t len) {
    const double y0 = v[start];
    const double y1 = v[start + len];
    double sse = 0.0;
    for (std::size_t j = 1; j < len; ++j) {
        const double chord =
            y0 + (y1 - y0) * static_cast<double>(j) / static_cast<double>(len);
        const double d = v[start + j] - chord;
        sse += d * d;
    }
    return sse;
}

}  // namespace

TEST_CASE("compress: an exactly linear series is one segment") {
    // Tolerance far below any real deviation yet above the rounding noise of
    // the running-sum SSE (~1e-12 at these magnitudes).
    std::vector<double> v(50);
    for (std::size_t i = 0; i < 50; ++i) v[i] = 2.0 + 0.3 * static_cast<double>(i);
    const auto result = fcprog::compress(TimeSeries(0.0, 1.0, v), 1e-4);
    REQUIRE(result.tuples.size() == 1);
    CHECK(result.tuples[0].len == 49);
    CHECK(result.tuples[0].inc == doctest::Approx(v[49] - v[0]).epsilon(1e-12));
    CHECK(result.start_value == v[0]);
}

TEST_CASE("compress: vanishing tolerance makes every sample a breakpoint") {
    fcprog::Rng rng(43);
    std::vector<double> v(40);
    for (auto& x : v) x = rng.normal();
    const auto result = fcprog::compress(TimeSeries(0.0, 1.0, v), 1e-300);
    CHECK(result.tuples.size() == 39);
    for (const auto& t : result.tuples) CHECK(t.len == 1);
}

TEST_CASE("compress: deviation bound verified segment by segment") {
    const std::size_t n = 200;
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = std::sin(2.0 * kPi * static_cast<double>(i) / 40.0);
    const double tol = 0.1;
    const auto result = fcprog::compress(TimeSeries(0.0, 1.0, v), tol);

    std::size_t pos = 0;
    std::size_t total_len = 0;
    for (const auto& t : result.tuples) {
        CHECK(oracle_chord_sse(v, pos, t.len) <=
              static_cast<double>(t.len) * tol * tol + 1e-12);
        CHECK(t.inc == doctest::Approx(v[pos + t.len] - v[pos]).epsilon(1e-12));
        pos += t.len;
        total_len += t.len;
    }
    CHECK(total_len == n - 1);
}

TEST_CASE("compress: random walks keep the bound and the length identity") {
    fcprog::Rng rng(47);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 30 + rng.index(200);
        std::vector<double> v(n);
        double walk = 0.0;
        for (auto& x : v) {
            walk += rng.normal();
            x = walk;
        }
        const double tol = 0.2 + 2.0 * rng.uniform01();
        const auto result = fcprog::compress_values(v, tol);
        std::size_t pos = 0, total = 0;
        for (const auto& t : result.tuples) {
            CHECK(oracle_chord_sse(v, pos, t.len) <=
                  static_cast<double>(t.len) * tol * tol + 1e-9);
            pos += t.len;
            total += t.len;
        }
        CHECK(total == n - 1);
    }
}

TEST_CASE("digitize: identical tuples collapse to one symbol") {
    const std::vector<SegmentTuple> tuples(12, SegmentTuple{3, 0.5});
    const auto model = fcprog::digitize(tuples, 100, 0.001, 1);
    CHECK(model.codebook.alphabet_size() == 1);
    for (auto s : model.symbols) CHECK(s == 0);
}

TEST_CASE("digitize: two tight groups become two pure runs") {
    std::vector<SegmentTuple> tuples;
    for (int i = 0; i < 10; ++i) tuples.push_back({1, 0.0});
    for (int i = 0; i < 10; ++i) tuples.push_back({10, 5.0});
    const auto model = fcprog::digitize(tuples, 100, 0.001, 3);
    REQUIRE(model.codebook.alphabet_size() == 2);
    for (int i = 0; i < 10; ++i) CHECK(model.symbols[i] == 0);  // first-appearance order
    for (int i = 10; i < 20; ++i) CHECK(model.symbols[i] == 1);
}

TEST_CASE("digitize: alphabet indices are contiguous from zero") {
    fcprog::Rng rng(53);
    std::vector<SegmentTuple> tuples;
    for (int i = 0; i < 60; ++i)
        tuples.push_back({1 + rng.index(12), rng.normal() * 2.0});
    const auto model = fcprog::digitize(tuples, 100, 0.001, 9);
    const std::size_t k = model.codebook.alphabet_size();
    std::vector<bool> seen(k, false);
    for (auto s : model.symbols) {
        REQUIRE(s < k);
        seen[s] = true;
    }
    for (bool b : seen) CHECK(b);
    // First appearances are in increasing symbol order.
    std::size_t next_new = 0;
    for (auto s : model.symbols)
        if (s == next_new) ++next_new;
        else CHECK(s < next_new);
    CHECK(next_new == k);
}

TEST_CASE("digitize: deterministic for a fixed seed") {
    fcprog::Rng rng(59);
    std::vector<SegmentTuple> tuples;
    for (int i = 0; i < 80; ++i) tuples.push_back({1 + rng.index(9), rng.normal()});
    const auto a = fcprog::digitize(tuples, 100, 0.001, 21);
    const auto b = fcprog::digitize(tuples, 100, 0.001, 21);
    CHECK(a.symbols == b.symbols);
    REQUIRE(a.codebook.centers.size() == b.codebook.centers.size());
    for (std::size_t i = 0; i < a.codebook.centers.size(); ++i) {
        CHECK(a.codebook.centers[i].first == b.codebook.centers[i].first);
        CHECK(a.codebook.centers[i].second == b.codebook.centers[i].second);
    }
}

TEST_CASE("inverse_digitize: integer center passes through") {
    fcprog::SymbolicModel model;
    model.symbols = {0, 0, 0};
    model.codebook.centers = {{4.0, -0.5}};
    model.codebook.scale_len = 1.0;
    model.codebook.scale_inc = 1.0;
    const auto tuples = fcprog::inverse_digitize(model);
    REQUIRE(tuples.size() == 3);
    for (const auto& t : tuples) {
        CHECK(t.len == 4);
        CHECK(t.inc == doctest::Approx(-0.5));
    }
}

TEST_CASE("inverse_digitize: fractional lengths round cumulatively") {
    fcprog::SymbolicModel model;
    model.symbols = {0, 0, 0, 0};
    model.codebook.centers = {{2.5, 1.0}};
    const auto tuples = fcprog::inverse_digitize(model);
    REQUIRE(tuples.size() == 4);
    CHECK(tuples[0].len == 3);
    CHECK(tuples[1].len == 2);
    CHECK(tuples[2].len == 3);
    CHECK(tuples[3].len == 2);
    std::size_t total = 0;
    for (const auto& t : tuples) total += t.len;
    CHECK(total == 10);  // |sum rounded - sum real| < 1
}

TEST_CASE("inverse_digitize: round-trips already-clustered integer tuples") {
    std::vector<SegmentTuple> tuples;
    for (int i = 0; i < 8; ++i) tuples.push_back({2, 1.0});
    for (int i = 0; i < 8; ++i) tuples.push_back({7, -3.0});
    const auto model = fcprog::digitize(tuples, 100, 0.001, 5);
    const auto back = fcprog::inverse_digitize(model);
    REQUIRE(back.size() == tuples.size());
    for (std::size_t i = 0; i < tuples.size(); ++i) {
        CHECK(back[i].len == tuples[i].len);
        CHECK(back[i].inc == doctest::Approx(tuples[i].inc).epsilon(1e-9));
    }
}

TEST_CASE("inverse_compress: single segment interpolates linearly") {
    const auto series = fcprog::inverse_compress({{2, 1.0}}, 0.0, 0.0, 1.0);
    REQUIRE(series.size() == 3);
    CHECK(series[0] == doctest::Approx(0.0));
    CHECK(series[1] == doctest::Approx(0.5));
    CHECK(series[2] == doctest::Approx(1.0));
}

TEST_CASE("breakpoints survive compress then inverse_compress exactly") {
    fcprog::Rng rng(61);
    std::vector<double> v(120);
    double walk = 3.0;
    for (auto& x : v) {
        walk += rng.normal() * 0.5;
        x = walk;
    }
    const auto compressed = fcprog::compress_values(v, 0.8);
    const auto rebuilt =
        fcprog::inverse_compress_values(compressed.tuples, compressed.start_value);
    REQUIRE(rebuilt.size() == v.size());
    std::size_t pos = 0;
    CHECK(std::abs(rebuilt[0] - v[0]) <= 1e-12);
    for (const auto& t : compressed.tuples) {
        pos += t.len;
        CHECK(std::abs(rebuilt[pos] - v[pos]) <= 1e-12 * std::max(1.0, std::abs(v[pos])));
    }
}

TEST_CASE("full round-trip error stays within the tolerance budget") {
    const std::size_t n = 400;
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(n - 1);
        v[i] = std::exp(-t) + 0.2 * std::sin(2.0 * kPi * 3.0 * t);
    }
    const double tol = 0.001;
    const auto compressed = fcprog::compress_values(v, tol);
    const auto model =
        fcprog::digitize(compressed.tuples, 100, tol, 13, compressed.start_value);
    const auto tuples = fcprog::inverse_digitize(model);
    const auto rebuilt = fcprog::inverse_compress_values(tuples, model.start_value);

    double range = 0.0;
    for (double x : v) range = std::max(range, std::abs(x));
    const std::size_t m = std::min(rebuilt.size(), v.size());
    // Digitization replaces each segment with its cluster centroid, so drift
    // accumulates; measured worst/range is 0.067 for this signal, bound at
    // 0.10 to absorb platform rounding differences.
    double worst = 0.0;
    for (std::size_t i = 0; i < m; ++i) worst = std::max(worst, std::abs(rebuilt[i] - v[i]));
    CHECK(worst <= 0.10 * range);
    CHECK(std::abs(static_cast<double>(rebuilt.size()) - static_cast<double>(v.size())) <= 2.0);
}

TEST_CASE("symbolic model json round-trips") {
    namespace fs = std::filesystem;
    std::vector<SegmentTuple> tuples;
    fcprog::Rng rng(67);
    for (int i = 0; i < 40; ++i) tuples.push_back({1 + rng.index(6), rng.normal()});
    const auto model = fcprog::digitize(tuples, 100, 0.001, 2, 1.25);
    const auto path = (fs::temp_directory_path() / "fcprog_test_model.json").string();
    fcprog::write_symbolic_model_json(path, model);
    const auto back = fcprog::read_symbolic_model_json(path);
    CHECK(back.symbols == model.symbols);
    CHECK(back.start_value == model.start_value);
    CHECK(back.tolerance == model.tolerance);
    CHECK(back.codebook.scale_len == model.codebook.scale_len);
    CHECK(back.codebook.scale_inc == model.codebook.scale_inc);
    REQUIRE(back.codebook.centers.size() == model.codebook.centers.size());
    for (std::size_t i = 0; i < model.codebook.centers.size(); ++i) {
        CHECK(back.codebook.centers[i].first == model.codebook.centers[i].first);
        CHECK(back.codebook.centers[i].second == model.codebook.centers[i].second);
    }
    fs::remove(path);
}
