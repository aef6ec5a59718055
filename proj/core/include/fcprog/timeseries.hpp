#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "fcprog/errors.hpp"

namespace fcprog {

/// Uniformly sampled real-valued signal. The grid is implicit: sample i sits
/// at t0 + i*dt, both in hours. Values are finite and there are at least two
/// of them; construction validates this once so downstream code can rely on it.
class TimeSeries {
public:
    TimeSeries(double t0_hours, double dt_hours, std::vector<double> values);

    double t0() const { return t0_; }
    double dt() const { return dt_; }
    std::size_t size() const { return values_.size(); }
    double time_at(std::size_t i) const { return t0_ + static_cast<double>(i) * dt_; }
    double end_time() const { return time_at(size() - 1); }
    double operator[](std::size_t i) const { return values_[i]; }
    const std::vector<double>& values() const { return values_; }

    /// Same grid (t0, dt, length) as another series.
    bool same_grid(const TimeSeries& other, double rel_tol = 1e-9) const;

    /// New series with identical grid but different values (must match length).
    TimeSeries with_values(std::vector<double> values) const;

    /// Prefix covering all samples with time <= t_hours (at least 2 samples).
    TimeSeries prefix_until(double t_hours) const;

private:
    double t0_;
    double dt_;
    std::vector<double> values_;
};

/// Min/max pair captured at normalization time; hi_max > hi_min strictly, so
/// the affine map is invertible.
struct NormalizationRecord {
    double hi_min = 0.0;
    double hi_max = 1.0;
};

/// Full-life min-max normalization onto [0, 1]: min -> 0, max -> 1.
/// Throws ConstantSeriesError when max == min, NonFiniteError on bad samples.
std::pair<TimeSeries, NormalizationRecord> normalize_full_life(const TimeSeries& series);

/// Inverse of normalize_full_life: y_i = hi_min + x_i * (hi_max - hi_min).
TimeSeries denormalize(const TimeSeries& series, const NormalizationRecord& record);

/// |a - b|_2 / |b|_2 over the common length. Used by completeness checks.
double relative_l2_error(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace fcprog
