#pragma once

#include <cstdint>
#include <vector>

#include "fcprog/timeseries.hpp"

namespace fcprog {

struct LoadStep {
    double duration_s;
    double current_a;
};

/// One full load cycle; the generator repeats it periodically.
struct LoadProfile {
    std::vector<LoadStep> steps;

    double cycle_seconds() const;
    /// Current at an offset into the repeating cycle, in seconds.
    double current_at(double t_s) const;
    /// Time-weighted mean current over one cycle.
    double mean_current() const;
    double max_current() const;
};

/// Start-stop cycling between 0 A and 8 A, seven steps.
LoadProfile fc1_profile();
/// Four urban sub-cycles followed by one suburban sub-cycle.
LoadProfile fc2_profile();

/// Stack temperature response to load: 2.5074 * I + 30.3585.
double fc1_temperature(double current_a);

enum class TrendKind { linear, piecewise_linear, exponential };

struct DegradationSpec {
    double v0 = 3.3;  // volts
    TrendKind trend = TrendKind::linear;
    double rate_pct_per_h = 0.012;  // decline as percent of v0 per hour
    double noise_std = 0.0066;     // volts (0.2% of the default v0)
    double load_swing_pct = 20.0;  // peak load-induced drop, percent of v0
    double load_time_scale = 1.0;  // divides step durations (speeds the cycle up)
    std::uint64_t seed = 0;
};

struct SynthResult {
    TimeSeries voltage;
    TimeSeries current;
    TimeSeries temperature;
    TimeSeries true_trend;  // recoverable trend: injected trend minus mean load drop
};

/// voltage(t) = trend(t) - beta * I(t) + noise, where beta scales the profile
/// peak current to the requested swing. true_trend subtracts the duty-
/// weighted mean drop beta * mean(I), the constant split no trend extractor
/// can recover. Samples cover [0, total_hours) at dt_hours spacing.
/// piecewise_linear doubles the decline rate halfway through.
SynthResult generate(const LoadProfile& profile, const DegradationSpec& spec,
                     double total_hours, double dt_hours);

}  // namespace fcprog
