#include "fcprog/spline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "fcprog/errors.hpp"

namespace fcprog {

std::vector<double> solve_tridiagonal(std::vector<double> sub,
                                      std::vector<double> diag,
                                      std::vector<double> super,
                                      std::vector<double> rhs) {
    const std::size_t n = diag.size();
    if (n == 0 || sub.size() != n - 1 || super.size() != n - 1 || rhs.size() != n)
        throw ShapeMismatchError("tridiagonal system bands have inconsistent sizes");
    for (std::size_t i = 1; i < n; ++i) {
        const double w = sub[i - 1] / diag[i - 1];
        diag[i] -= w * super[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    std::vector<double> x(n);
    x[n - 1] = rhs[n - 1] / diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;)
        x[i] = (rhs[i] - super[i] * x[i + 1]) / diag[i];
    return x;
}

CubicSpline::CubicSpline(std::vector<double> xs, std::vector<double> ys)
    : x_(std::move(xs)), y_(std::move(ys)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n)
        throw ShapeMismatchError("spline needs >= 2 knots and matching x/y lengths");
    for (std::size_t i = 1; i < n; ++i)
        if (!(x_[i] > x_[i - 1]))
            throw BadSpecError("spline knots must be strictly increasing");

    m_.assign(n, 0.0);
    if (n == 2) return;

    std::vector<double> sub(n - 3), diag(n - 2), super(n - 3), rhs(n - 2);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h_lo = x_[i] - x_[i - 1];
        const double h_hi = x_[i + 1] - x_[i];
        diag[i - 1] = 2.0 * (h_lo + h_hi);
        rhs[i - 1] = 6.0 * ((y_[i + 1] - y_[i]) / h_hi - (y_[i] - y_[i - 1]) / h_lo);
        if (i > 1) sub[i - 2] = h_lo;
        if (i + 2 < n) super[i - 1] = h_hi;
    }
    auto interior = solve_tridiagonal(std::move(sub), std::move(diag), std::move(super), std::move(rhs));
    for (std::size_t i = 0; i < interior.size(); ++i) m_[i + 1] = interior[i];
}

double CubicSpline::eval_segment(std::size_t seg, double x) const {
    const double h = x_[seg + 1] - x_[seg];
    const double a = (x_[seg + 1] - x) / h;
    const double b = (x - x_[seg]) / h;
    return a * y_[seg] + b * y_[seg + 1] +
           ((a * a * a - a) * m_[seg] + (b * b * b - b) * m_[seg + 1]) * (h * h) / 6.0;
}

double CubicSpline::operator()(double x) const {
    const std::size_t n = x_.size();
    std::size_t seg;
    if (x <= x_[0]) {
        seg = 0;
    } else if (x >= x_[n - 1]) {
        seg = n - 2;
    } else {
        seg = static_cast<std::size_t>(std::upper_bound(x_.begin(), x_.end(), x) - x_.begin()) - 1;
        seg = std::min(seg, n - 2);
    }
    return eval_segment(seg, x);
}

std::vector<double> CubicSpline::evaluate_sorted(const std::vector<double>& queries) const {
    std::vector<double> out(queries.size());
    const std::size_t n = x_.size();
    std::size_t seg = 0;
    for (std::size_t i = 0; i < queries.size(); ++i) {
        const double x = queries[i];
        while (seg + 2 < n && x_[seg + 1] <= x) ++seg;
        out[i] = eval_segment(seg, x);
    }
    return out;
}

}  // namespace fcprog
