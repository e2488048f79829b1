#include "pbk/quadrature.hpp"

#include "pbk/errors.hpp"

#include <cmath>
#include <queue>
#include <string>
#include <vector>

namespace pbk {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
// Nodes are symmetric; only the non-negative half is stored.
constexpr double kNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0,
};
constexpr double kKronrodW[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728,
};
// Gauss weights attach to the odd-indexed Kronrod nodes.
constexpr double kGaussW[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469,
};

struct Segment {
    double a;
    double b;
    double value;  // K15 estimate
    double error;  // |K15 - G7|
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment evaluate(const std::function<double(double)>& f, double a, double b) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double kronrod = 0.0;
    double gauss = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double offset = half * kNodes[i];
        double fsum;
        if (i == 7) {
            fsum = f(mid);
        } else {
            fsum = f(mid - offset) + f(mid + offset);
        }
        kronrod += kKronrodW[i] * fsum;
        if (i % 2 == 1) {
            gauss += kGaussW[i / 2] * fsum;
        }
    }
    kronrod *= half;
    gauss *= half;
    return {a, b, kronrod, std::abs(kronrod - gauss)};
}

} // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double abs_tol, double rel_tol,
                           int max_intervals) {
    if (!(a < b)) {
        throw parameter_error("integrate requires a < b");
    }
    std::priority_queue<Segment> queue;
    queue.push(evaluate(f, a, b));
    double total = queue.top().value;
    double error = queue.top().error;
    int intervals = 1;
    while (error > std::max(abs_tol, rel_tol * std::abs(total))) {
        if (intervals >= max_intervals) {
            throw budget_error("integrate: interval budget " +
                               std::to_string(max_intervals) +
                               " exhausted with error " + std::to_string(error));
        }
        const Segment worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const Segment left = evaluate(f, worst.a, mid);
        const Segment right = evaluate(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        ++intervals;
    }
    return {total, error, intervals};
}

} // namespace pbk
