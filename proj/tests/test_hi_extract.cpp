#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <vector>

#include "fcprog/emd.hpp"
#include "fcprog/hi_extract.hpp"
#include "fcprog/synth.hpp"
#include "fcprog/timeseries.hpp"

using fcprog::TimeSeries;

namespace {

constexpr double kPi = std::numbers::pi;

TimeSeries tone_hz(double f_hz, double dt_s, std::size_t n, double amp = 1.0) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = amp * std::sin(2.0 * kPi * f_hz * static_cast<double>(i) * dt_s);
    return TimeSeries(0.0, dt_s / 3600.0, std::move(v));
}

double l2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

}  // namespace

TEST_CASE("representative_if recovers a tone frequency within 1%") {
    const auto rif = fcprog::representative_if(tone_hz(0.01, 5.0, 2000));
    CHECK(std::abs(rif - 0.01) <= 0.0001);
}

TEST_CASE("a 0.001 Hz tone passes the 0.005 Hz stop rule") {
    CHECK(fcprog::representative_if(tone_hz(0.001, 20.0, 3000)) < 0.005);
}

TEST_CASE("amplitude weighting keeps the dominant slow mode in charge") {
    // Slow strong tone + fast weak ripple: the weighted median must ignore
    // the ripple's frequency.
    const std::size_t n = 4000;
    const double dt_s = 10.0;
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) * dt_s;
        v[i] = std::sin(2.0 * kPi * 0.001 * t) + 0.05 * std::sin(2.0 * kPi * 0.05 * t);
    }
    const auto rif = fcprog::representative_if(TimeSeries(0.0, dt_s / 3600.0, std::move(v)));
    CHECK(rif < 0.005);
}

TEST_CASE("monotone input is its own health indicator") {
    std::vector<double> v(100);
    for (std::size_t i = 0; i < 100; ++i) v[i] = 5.0 - 0.01 * static_cast<double>(i);
    const TimeSeries ramp(0.0, 1.0 / 3600.0, v);
    const auto result = fcprog::extract_hi(ramp, 0.005, {});
    CHECK(result.imf_count == 0);
    for (std::size_t i = 0; i < ramp.size(); ++i) CHECK(result.hi[i] == ramp[i]);
}

TEST_CASE("ramp plus sinusoidal load separates almost exactly") {
    const std::size_t n = 4000;
    const double dt_s = 1.0;
    std::vector<double> ramp(n), v(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) * dt_s;
        ramp[i] = 8.0 - 0.00075 * t;
        v[i] = ramp[i] + 0.5 * std::sin(2.0 * kPi * 0.02 * t);
    }
    const auto result =
        fcprog::extract_hi(TimeSeries(0.0, dt_s / 3600.0, v), 0.005, {});
    std::vector<double> diff(n);
    for (std::size_t i = 0; i < n; ++i) diff[i] = result.hi[i] - ramp[i];
    CHECK(l2(diff) <= 0.005 * l2(ramp));
}

TEST_CASE("ramp plus square-wave load stays within 10% of the ramp") {
    // Step discontinuities put envelope knots 1 then 49 samples apart, so
    // sifting mixes modes and the indicator wobbles around the ramp; the
    // bound here records that degradation rather than clean separation.
    const std::size_t n = 4000;
    const double dt_s = 1.0;
    std::vector<double> ramp(n), v(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) * dt_s;
        ramp[i] = 8.0 - 0.00075 * t;
        const double square = std::sin(2.0 * kPi * 0.02 * t) >= 0.0 ? 0.5 : -0.5;
        v[i] = ramp[i] + square;
    }
    const auto result =
        fcprog::extract_hi(TimeSeries(0.0, dt_s / 3600.0, v), 0.005, {});
    std::vector<double> diff(n);
    for (std::size_t i = 0; i < n; ++i) diff[i] = result.hi[i] - ramp[i];
    CHECK(l2(diff) <= 0.10 * l2(ramp));
}

TEST_CASE("huge threshold still takes one decomposition pass") {
    const auto result = fcprog::extract_hi(tone_hz(0.01, 5.0, 1000), 1e9, {});
    CHECK(result.imf_count == 1);
    CHECK(result.threshold_met);
}

TEST_CASE("exhausting max_imfs leaves the threshold unmet but returns the residual") {
    fcprog::SiftConfig cfg;
    cfg.max_imfs = 1;
    const std::size_t n = 3000;
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i);
        v[i] = std::sin(2.0 * kPi * 0.05 * t) + std::sin(2.0 * kPi * 0.01 * t) +
               std::sin(2.0 * kPi * 0.002 * t);
    }
    const auto result = fcprog::extract_hi(TimeSeries(0.0, 1.0 / 3600.0, v), 1e-12, cfg);
    CHECK(result.imf_count == 1);
    CHECK_FALSE(result.threshold_met);
    CHECK(result.hi.size() == n);
}

TEST_CASE("matches decompose driven by the equivalent stop rule") {
    const std::size_t n = 3000;
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i);
        v[i] = std::sin(2.0 * kPi * 0.05 * t) + 0.5 * std::sin(2.0 * kPi * 0.005 * t) +
               0.001 * t;
    }
    const TimeSeries s(0.0, 1.0 / 3600.0, v);
    const double thr = 0.02;  // between the two tone frequencies
    const auto direct = fcprog::extract_hi(s, thr, {});
    const auto ruled = fcprog::decompose(
        s, {}, [&](const TimeSeries& r) { return fcprog::representative_if(r) < thr; });
    REQUIRE(ruled.imfs.size() == direct.imf_count);
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(ruled.residual[i] == direct.hi[i]);

    const auto rebuilt = ruled.reconstruct();
    CHECK(fcprog::relative_l2_error(rebuilt.values(), s.values()) <= 1e-8);
}

TEST_CASE("lowering the threshold never decreases the component count") {
    const std::size_t n = 4000;
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i);
        v[i] = std::sin(2.0 * kPi * 0.05 * t) + std::sin(2.0 * kPi * 0.01 * t) +
               std::sin(2.0 * kPi * 0.002 * t) + 0.0005 * t;
    }
    const TimeSeries s(0.0, 1.0 / 3600.0, v);
    std::size_t prev = 0;
    bool first = true;
    for (double thr : {0.1, 0.02, 0.004, 0.0008}) {
        const auto result = fcprog::extract_hi(s, thr, {});
        if (!first) CHECK(result.imf_count >= prev);
        prev = result.imf_count;
        first = false;
    }
}

TEST_CASE("extraction is deterministic") {
    const auto s = tone_hz(0.02, 2.0, 1500);
    const auto a = fcprog::extract_hi(s, 0.005, {});
    const auto b = fcprog::extract_hi(s, 0.005, {});
    CHECK(a.imf_count == b.imf_count);
    for (std::size_t i = 0; i < a.hi.size(); ++i) CHECK(a.hi[i] == b.hi[i]);
}

TEST_CASE("synthetic FC-1 ageing data yields a cleanly decreasing indicator") {
    fcprog::DegradationSpec spec;
    spec.load_time_scale = 60.0;  // squeeze the 2.5 h cycle to 148.75 s
    spec.seed = 7;
    const auto synth =
        fcprog::generate(fcprog::fc1_profile(), spec, 400.0, 10.0 / 3600.0);

    const auto result = fcprog::extract_hi(synth.voltage, 0.005, {});
    REQUIRE(result.imf_count >= 1);

    // Twenty block means must fall strictly, and the indicator must track
    // the injected trend closely.
    const auto& hi = result.hi.values();
    const std::size_t blocks = 20;
    const std::size_t per = hi.size() / blocks;
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < blocks; ++b) {
        double mean = 0.0;
        for (std::size_t i = b * per; i < (b + 1) * per; ++i) mean += hi[i];
        mean /= static_cast<double>(per);
        CHECK(mean < prev);
        prev = mean;
    }
    CHECK(fcprog::relative_l2_error(hi, synth.true_trend.values()) <= 0.03);
}
