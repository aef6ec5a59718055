#pragma once

#include <cstddef>
#include <vector>

namespace fcprog {

/// Natural cubic spline through (x_i, y_i) knots with strictly increasing x.
/// Second derivatives vanish at both ends; two knots degenerate to a line.
/// Queries outside the knot range continue the boundary segment's cubic.
class CubicSpline {
public:
    CubicSpline(std::vector<double> xs, std::vector<double> ys);

    double operator()(double x) const;

    /// Evaluates at ascending query points in O(n + k) with a sweep pointer.
    std::vector<double> evaluate_sorted(const std::vector<double>& queries) const;

    std::size_t knot_count() const { return x_.size(); }

private:
    double eval_segment(std::size_t seg, double x) const;

    std::vector<double> x_;
    std::vector<double> y_;
    std::vector<double> m_;  // second derivatives at knots
};

/// Solves a tridiagonal system in place (Thomas algorithm). diag/rhs have n
/// entries, sub/super have n-1; returns the solution. Requires strict
/// diagonal dominance, which all callers here satisfy.
std::vector<double> solve_tridiagonal(std::vector<double> sub,
                                      std::vector<double> diag,
                                      std::vector<double> super,
                                      std::vector<double> rhs);

}  // namespace fcprog
