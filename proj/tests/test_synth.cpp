#include <cmath>
#include <vector>

#include "doctest.h"
#include "fcprog/errors.hpp"
#include "fcprog/synth.hpp"

using namespace fcprog;

namespace {

LoadProfile constant_profile(double current) {
    return LoadProfile{{{100.0, current}}};
}

}  // namespace

TEST_CASE("FC-1 profile reproduces the step table") {
    LoadProfile p = fc1_profile();
    REQUIRE(p.steps.size() == 7);
    const double durations[] = {1060, 630, 710, 1910, 915, 2565, 1065};
    const double currents[] = {0, 8, 0, 8, 0, 8, 0};
    for (std::size_t i = 0; i < 7; ++i) {
        CHECK(p.steps[i].duration_s == durations[i]);
        CHECK(p.steps[i].current_a == currents[i]);
    }
    CHECK(p.cycle_seconds() == 8855.0);
    CHECK(p.max_current() == 8.0);
    CHECK(p.mean_current() == doctest::Approx((630.0 + 1910.0 + 2565.0) * 8.0 / 8855.0)
                                  .epsilon(1e-14));
}

TEST_CASE("FC-2 profile nests four urban cycles before the suburban one") {
    LoadProfile p = fc2_profile();
    REQUIRE(p.steps.size() == 35);
    CHECK(p.steps[0].duration_s == 13.0);
    CHECK(p.steps[0].current_a == 4.45);
    // urban block repeats every 7 steps
    for (std::size_t rep = 1; rep < 4; ++rep)
        for (std::size_t i = 0; i < 7; ++i) {
            CHECK(p.steps[rep * 7 + i].duration_s == p.steps[i].duration_s);
            CHECK(p.steps[rep * 7 + i].current_a == p.steps[i].current_a);
        }
    CHECK(p.steps[34].duration_s == 36.0);
    CHECK(p.steps[34].current_a == 0.0);
    CHECK(p.cycle_seconds() == doctest::Approx(4 * 195.0 + 401.0).epsilon(1e-14));
    CHECK(p.max_current() == 35.6);
}

TEST_CASE("stack temperature is affine in the current") {
    CHECK(fc1_temperature(0.0) == doctest::Approx(30.3585).epsilon(1e-15));
    CHECK(fc1_temperature(8.0) == doctest::Approx(50.4177).epsilon(1e-12));
    for (double a : {1.0, 3.5}) {
        for (double b : {2.0, 4.25}) {
            CHECK(fc1_temperature(a) + fc1_temperature(b) - fc1_temperature(0.0) ==
                  doctest::Approx(fc1_temperature(a + b)).epsilon(1e-12));
        }
    }
}

TEST_CASE("current_at walks the steps and wraps periodically") {
    LoadProfile p = fc1_profile();
    CHECK(p.current_at(0.0) == 0.0);
    CHECK(p.current_at(1059.9) == 0.0);
    CHECK(p.current_at(1060.0) == 8.0);
    CHECK(p.current_at(1689.9) == 8.0);
    CHECK(p.current_at(1690.0) == 0.0);
    for (double t : {12.0, 1500.0, 4000.0, 8854.0})
        CHECK(p.current_at(t + 8855.0) == p.current_at(t));
}

TEST_CASE("noiseless constant load gives voltage equal to the true trend") {
    DegradationSpec spec;
    spec.noise_std = 0.0;
    SynthResult r = generate(constant_profile(5.0), spec, 1.0, 1.0 / 120.0);
    REQUIRE(r.voltage.size() == 120);
    // max current == mean current, so the load drop is entirely DC and the
    // recoverable trend equals the voltage.
    for (std::size_t i = 0; i < r.voltage.size(); ++i)
        CHECK(r.voltage[i] == doctest::Approx(r.true_trend[i]).epsilon(1e-14));

    const double beta = 0.2 * spec.v0 / 5.0;
    const double rate = spec.rate_pct_per_h / 100.0;
    for (std::size_t i : {std::size_t{0}, std::size_t{60}, std::size_t{119}}) {
        const double t_h = r.voltage.time_at(i);
        const double expected = spec.v0 * (1.0 - rate * t_h) - beta * 5.0;
        CHECK(r.voltage[i] == doctest::Approx(expected).epsilon(1e-14));
    }
}

TEST_CASE("noiseless FC-1 samples match the formula term by term") {
    DegradationSpec spec;
    spec.noise_std = 0.0;
    LoadProfile p = fc1_profile();
    const double dt_h = 30.0 / 3600.0;
    SynthResult r = generate(p, spec, 10.0, dt_h);

    const double beta = (spec.load_swing_pct / 100.0) * spec.v0 / p.max_current();
    const double rate = spec.rate_pct_per_h / 100.0;
    for (std::size_t i : {std::size_t{0}, std::size_t{37}, std::size_t{500},
                          std::size_t{1199}}) {
        const double t_h = r.voltage.time_at(i);
        const double amps = p.current_at(t_h * 3600.0);
        CHECK(r.current[i] == amps);
        CHECK(r.temperature[i] == doctest::Approx(fc1_temperature(amps)).epsilon(1e-14));
        const double expected = spec.v0 * (1.0 - rate * t_h) - beta * amps;
        CHECK(r.voltage[i] == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("true trend removes exactly the duty-weighted mean drop") {
    DegradationSpec spec;
    spec.noise_std = 0.0;

    SUBCASE("binary-exact step grid cancels to rounding noise") {
        // 900 s steps with dt 225 s = 1/16 h: every sample time and boundary
        // is exact in binary, so each cycle sums four +4 A and four -4 A
        // deviations from the 4 A mean.
        LoadProfile p{{{900.0, 0.0}, {900.0, 8.0}}};
        SynthResult r = generate(p, spec, 2.0, 1.0 / 16.0);
        double acc = 0.0;
        for (std::size_t i = 0; i < 8; ++i) acc += r.voltage[i] - r.true_trend[i];
        CHECK(std::abs(acc / 8.0) <= 1e-12);
    }

    SUBCASE("FC-1 grid cancels up to boundary-sample rounding") {
        // Sample times are i*dt_h*3600, so a step-boundary sample can round
        // to either side of the edge; allow two misclassified samples.
        LoadProfile p = fc1_profile();
        const double dt_h = 5.0 / 3600.0;
        SynthResult r = generate(p, spec, 5.0, dt_h);
        const std::size_t per_cycle = 8855 / 5;
        double acc = 0.0;
        for (std::size_t i = 0; i < per_cycle; ++i)
            acc += r.voltage[i] - r.true_trend[i];
        const double beta = (spec.load_swing_pct / 100.0) * spec.v0 / p.max_current();
        const double bound = 2.0 * beta * 8.0 / static_cast<double>(per_cycle);
        CHECK(std::abs(acc / static_cast<double>(per_cycle)) <= bound);
    }
}

TEST_CASE("sampling covers the half-open span") {
    DegradationSpec spec;
    SynthResult r = generate(constant_profile(2.0), spec, 1.0, 1.0 / 120.0);
    CHECK(r.voltage.size() == 120);
    CHECK(r.voltage.time_at(0) == 0.0);
    CHECK(r.voltage.end_time() < 1.0);
    CHECK(r.voltage.end_time() == doctest::Approx(119.0 / 120.0).epsilon(1e-12));
}

TEST_CASE("generation is seed deterministic") {
    DegradationSpec spec;
    spec.seed = 42;
    LoadProfile p = fc1_profile();
    SynthResult a = generate(p, spec, 3.0, 30.0 / 3600.0);
    SynthResult b = generate(p, spec, 3.0, 30.0 / 3600.0);
    REQUIRE(a.voltage.size() == b.voltage.size());
    for (std::size_t i = 0; i < a.voltage.size(); ++i)
        CHECK(a.voltage[i] == b.voltage[i]);

    spec.seed = 43;
    SynthResult c = generate(p, spec, 3.0, 30.0 / 3600.0);
    bool all_same = true;
    for (std::size_t i = 0; i < a.voltage.size(); ++i)
        if (a.voltage[i] != c.voltage[i]) all_same = false;
    CHECK(!all_same);
}

TEST_CASE("noise leaves current, temperature and trend untouched") {
    DegradationSpec spec;
    spec.seed = 7;
    LoadProfile p = fc1_profile();
    SynthResult noisy = generate(p, spec, 3.0, 30.0 / 3600.0);
    spec.noise_std = 0.0;
    SynthResult clean = generate(p, spec, 3.0, 30.0 / 3600.0);
    for (std::size_t i = 0; i < noisy.current.size(); ++i) {
        CHECK(noisy.current[i] == clean.current[i]);
        CHECK(noisy.temperature[i] == clean.temperature[i]);
        CHECK(noisy.true_trend[i] == clean.true_trend[i]);
    }
}

TEST_CASE("load_time_scale compresses the cycle") {
    DegradationSpec spec;
    spec.noise_std = 0.0;
    spec.load_time_scale = 60.0;
    LoadProfile p = fc1_profile();
    const double dt_h = 5.0 / 3600.0;
    SynthResult r = generate(p, spec, 1.0, dt_h);
    // At 60x the 8855 s cycle lasts 8855/60 s; a sample at hour t sees the
    // unscaled profile at 60 * t.
    for (std::size_t i : {std::size_t{0}, std::size_t{10}, std::size_t{100},
                          std::size_t{500}}) {
        const double t_s_scaled = r.current.time_at(i) * 3600.0 * 60.0;
        CHECK(r.current[i] == p.current_at(t_s_scaled));
    }
    // the scaled series must contain both load levels within a few minutes
    bool saw_low = false, saw_high = false;
    for (std::size_t i = 0; i < 60; ++i) {
        if (r.current[i] == 0.0) saw_low = true;
        if (r.current[i] == 8.0) saw_high = true;
    }
    CHECK(saw_low);
    CHECK(saw_high);
}

TEST_CASE("trend families behave as named") {
    LoadProfile p = constant_profile(1.0);

    SUBCASE("linear and exponential trends never increase") {
        for (TrendKind kind : {TrendKind::linear, TrendKind::exponential}) {
            DegradationSpec spec;
            spec.trend = kind;
            spec.noise_std = 0.0;
            SynthResult r = generate(p, spec, 5.0, 0.01);
            for (std::size_t i = 1; i < r.true_trend.size(); ++i)
                CHECK(r.true_trend[i] <= r.true_trend[i - 1]);
        }
    }

    SUBCASE("exponential decays by the rate fraction per hour") {
        DegradationSpec spec;
        spec.trend = TrendKind::exponential;
        spec.noise_std = 0.0;
        spec.rate_pct_per_h = 1.0;
        SynthResult r = generate(p, spec, 5.0, 0.5);
        // samples at t and t+1h differ by a factor e^{-0.01}
        const double ratio = (r.true_trend[4] + 0.2 * spec.v0) /
                             (r.true_trend[2] + 0.2 * spec.v0);
        CHECK(ratio == doctest::Approx(std::exp(-0.01)).epsilon(1e-10));
    }

    SUBCASE("piecewise trend doubles its slope after the midpoint") {
        DegradationSpec spec;
        spec.trend = TrendKind::piecewise_linear;
        spec.noise_std = 0.0;
        SynthResult r = generate(p, spec, 10.0, 0.1);
        const double early = r.true_trend[10] - r.true_trend[20];  // 1 h apart
        const double late = r.true_trend[80] - r.true_trend[90];
        CHECK(late == doctest::Approx(2.0 * early).epsilon(1e-9));
    }
}

TEST_CASE("bad specs are rejected") {
    DegradationSpec spec;
    LoadProfile p = fc1_profile();
    CHECK_THROWS_AS(generate(p, spec, 1.0, 30.0 / 3600.0), BadSpecError);  // < one cycle
    CHECK_THROWS_AS(generate(LoadProfile{}, spec, 10.0, 0.01), BadSpecError);
    spec.noise_std = -1.0;
    CHECK_THROWS_AS(generate(p, spec, 10.0, 30.0 / 3600.0), BadSpecError);
    spec.noise_std = 0.01;
    spec.load_time_scale = 0.0;
    CHECK_THROWS_AS(generate(p, spec, 10.0, 30.0 / 3600.0), BadSpecError);
    spec.load_time_scale = 1.0;
    CHECK_THROWS_AS(generate(p, spec, 10.0, 0.0), BadSpecError);
    LoadProfile bad{{{100.0, -1.0}}};
    CHECK_THROWS_AS(generate(bad, spec, 10.0, 0.01), BadSpecError);
}
