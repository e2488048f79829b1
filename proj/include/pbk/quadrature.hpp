#pragma once

#include <functional>

namespace pbk {

struct QuadratureResult {
    double value;
    double error_bound;  // a-posteriori absolute estimate (sum of segment estimates)
    int intervals;       // segments in the final partition
};

/// Adaptive Gauss-Kronrod 7-15 on [a, b]. Bisects the segment with the largest
/// error estimate until error_bound <= max(abs_tol, rel_tol * |value|).
/// Throws budget_error when max_intervals segments do not reach the tolerance.
QuadratureResult integrate(const std::function<double(double)>& f,
                           double a, double b,
                           double abs_tol, double rel_tol,
                           int max_intervals = 2000);

} // namespace pbk
