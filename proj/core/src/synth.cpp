#include "fcprog/synth.hpp"

#include <algorithm>
#include <cmath>

#include "fcprog/rng.hpp"

namespace fcprog {

double LoadProfile::cycle_seconds() const {
    double total = 0.0;
    for (const auto& step : steps) total += step.duration_s;
    return total;
}

double LoadProfile::current_at(double t_s) const {
    const double cycle = cycle_seconds();
    double offset = std::fmod(t_s, cycle);
    if (offset < 0.0) offset += cycle;
    for (const auto& step : steps) {
        if (offset < step.duration_s) return step.current_a;
        offset -= step.duration_s;
    }
    return steps.back().current_a;
}

double LoadProfile::mean_current() const {
    double weighted = 0.0;
    for (const auto& step : steps) weighted += step.duration_s * step.current_a;
    return weighted / cycle_seconds();
}

double LoadProfile::max_current() const {
    double m = 0.0;
    for (const auto& step : steps) m = std::max(m, step.current_a);
    return m;
}

LoadProfile fc1_profile() {
    return LoadProfile{{{1060, 0}, {630, 8}, {710, 0}, {1910, 8}, {915, 0}, {2565, 8}, {1065, 0}}};
}

LoadProfile fc2_profile() {
    const std::vector<LoadStep> urban{{13, 4.45}, {33, 1.78}, {35, 9.51}, {47, 1.78},
                                      {20, 14.85}, {25, 10.4}, {22, 1.78}};
    const std::vector<LoadStep> suburban{{46, 1.78}, {58, 20.75}, {82, 14.85}, {85, 20.75},
                                         {50, 29.65}, {44, 35.6}, {36, 0}};
    LoadProfile profile;
    for (int rep = 0; rep < 4; ++rep)
        profile.steps.insert(profile.steps.end(), urban.begin(), urban.end());
    profile.steps.insert(profile.steps.end(), suburban.begin(), suburban.end());
    return profile;
}

double fc1_temperature(double current_a) { return 2.5074 * current_a + 30.3585; }

namespace {

double trend_value(const DegradationSpec& spec, double t_h, double total_hours) {
    const double rate = spec.rate_pct_per_h / 100.0;  // fraction of v0 per hour
    switch (spec.trend) {
        case TrendKind::linear:
            return spec.v0 * (1.0 - rate * t_h);
        case TrendKind::exponential:
            return spec.v0 * std::exp(-rate * t_h);
        case TrendKind::piecewise_linear: {
            const double knee = 0.5 * total_hours;
            if (t_h <= knee) return spec.v0 * (1.0 - rate * t_h);
            return spec.v0 * (1.0 - rate * knee - 2.0 * rate * (t_h - knee));
        }
    }
    throw BadSpecError("unknown trend kind");
}

}  // namespace

SynthResult generate(const LoadProfile& profile, const DegradationSpec& spec,
                     double total_hours, double dt_hours) {
    if (profile.steps.empty()) throw BadSpecError("load profile has no steps");
    for (const auto& step : profile.steps) {
        if (!(step.duration_s > 0.0)) throw BadSpecError("load step duration must be > 0");
        if (step.current_a < 0.0) throw BadSpecError("load current must be >= 0");
    }
    if (!(spec.load_time_scale > 0.0)) throw BadSpecError("load_time_scale must be > 0");
    if (spec.noise_std < 0.0) throw BadSpecError("noise_std must be >= 0");
    if (!(spec.rate_pct_per_h > 0.0)) throw BadSpecError("decline rate must be > 0");
    const double cycle_h = profile.cycle_seconds() / spec.load_time_scale / 3600.0;
    if (!(total_hours > cycle_h))
        throw BadSpecError("series must span more than one load cycle");
    if (!(dt_hours > 0.0)) throw BadSpecError("dt must be > 0");

    const auto n = static_cast<std::size_t>(std::llround(total_hours / dt_hours));
    if (n < 2) throw BadSpecError("series needs at least 2 samples");

    const double i_max = profile.max_current();
    const double beta = i_max > 0.0 ? (spec.load_swing_pct / 100.0) * spec.v0 / i_max : 0.0;
    const double mean_drop = beta * profile.mean_current();

    Rng rng(spec.seed);
    std::vector<double> voltage(n), current(n), temperature(n), trend(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t_h = static_cast<double>(i) * dt_hours;
        const double load_t_s = t_h * 3600.0 * spec.load_time_scale;
        const double amps = profile.current_at(load_t_s);
        const double clean = trend_value(spec, t_h, total_hours);
        current[i] = amps;
        temperature[i] = fc1_temperature(amps);
        voltage[i] = clean - beta * amps + spec.noise_std * rng.normal();
        trend[i] = clean - mean_drop;
    }

    return SynthResult{TimeSeries(0.0, dt_hours, std::move(voltage)),
                       TimeSeries(0.0, dt_hours, std::move(current)),
                       TimeSeries(0.0, dt_hours, std::move(temperature)),
                       TimeSeries(0.0, dt_hours, std::move(trend))};
}

}  // namespace fcprog
