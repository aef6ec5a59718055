#include "fcprog/timeseries.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fcprog {

TimeSeries::TimeSeries(double t0_hours, double dt_hours, std::vector<double> values)
    : t0_(t0_hours), dt_(dt_hours), values_(std::move(values)) {
    if (!std::isfinite(t0_)) throw NonFiniteError("series start time is not finite");
    if (!std::isfinite(dt_) || dt_ <= 0.0) throw BadSpecError("series time step must be finite and > 0");
    if (values_.size() < 2) throw TooShortError("series needs at least 2 samples, got " + std::to_string(values_.size()));
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i]))
            throw NonFiniteError("non-finite sample at index " + std::to_string(i));
    }
}

bool TimeSeries::same_grid(const TimeSeries& other, double rel_tol) const {
    if (size() != other.size()) return false;
    const double scale = std::max({std::abs(t0_), std::abs(other.t0_), dt_, other.dt_, 1.0});
    return std::abs(t0_ - other.t0_) <= rel_tol * scale &&
           std::abs(dt_ - other.dt_) <= rel_tol * scale;
}

TimeSeries TimeSeries::with_values(std::vector<double> values) const {
    if (values.size() != values_.size())
        throw ShapeMismatchError("with_values length " + std::to_string(values.size()) +
                                 " does not match series length " + std::to_string(values_.size()));
    return TimeSeries(t0_, dt_, std::move(values));
}

TimeSeries TimeSeries::prefix_until(double t_hours) const {
    if (t_hours < time_at(1))
        throw TooShortError("prefix would keep fewer than 2 samples");
    const double span = (t_hours - t0_) / dt_;
    std::size_t count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
    count = std::min(count, size());
    return TimeSeries(t0_, dt_, std::vector<double>(values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(count)));
}

std::pair<TimeSeries, NormalizationRecord> normalize_full_life(const TimeSeries& series) {
    const auto [lo_it, hi_it] = std::minmax_element(series.values().begin(), series.values().end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    if (lo == hi) throw ConstantSeriesError("cannot normalize a constant series");
    const double span = hi - lo;
    std::vector<double> out(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) out[i] = (series[i] - lo) / span;
    return {series.with_values(std::move(out)), NormalizationRecord{lo, hi}};
}

TimeSeries denormalize(const TimeSeries& series, const NormalizationRecord& record) {
    if (!(record.hi_max > record.hi_min))
        throw BadSpecError("normalization record requires hi_max > hi_min");
    const double span = record.hi_max - record.hi_min;
    std::vector<double> out(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) out[i] = record.hi_min + series[i] * span;
    return series.with_values(std::move(out));
}

double relative_l2_error(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size())
        throw ShapeMismatchError("relative_l2_error requires equal lengths");
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        num += d * d;
        den += b[i] * b[i];
    }
    if (den == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return std::sqrt(num / den);
}

}  // namespace fcprog
