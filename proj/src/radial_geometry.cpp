#include "pbk/radial_geometry.hpp"

#include "pbk/errors.hpp"
#include "pbk/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace pbk {

namespace {

constexpr double kPi = std::numbers::pi;

// Eigenvalues of the complex Hessian on the axis slice (sqrt(r), 0):
// A = (r phi')' in the radial direction, B = phi' transverse.
struct AxisFrame {
    double r;
    double A, B;
    double Ap, App;  // radial derivatives of A
    double Bp, Bpp;  // radial derivatives of B
};

AxisFrame axis_frame(const RadialPotential& pot, double r) {
    const Derivs d = pot.derivatives(r);
    AxisFrame f;
    f.r = r;
    f.B = d.d1;
    f.A = pot.radial_second(r);
    if (!(f.B > 0.0) || !(f.A > 0.0)) {
        throw positivity_error("metric not positive at r = " + std::to_string(r) +
                               ": phi' = " + std::to_string(f.B) +
                               ", (r phi')' = " + std::to_string(f.A));
    }
    f.Ap = 2.0 * d.d2 + r * d.d3;
    f.App = 3.0 * d.d3 + r * d.d4;
    f.Bp = d.d2;
    f.Bpp = d.d3;
    return f;
}

double sq(double x) { return x * x; }

} // namespace

double metric_determinant(const RadialPotential& pot, double r, int n) {
    if (n < 1) {
        throw parameter_error("dimension must be >= 1");
    }
    const AxisFrame f = axis_frame(pot, r);
    return std::pow(f.B, n - 1) * f.A;
}

double scalar_curvature(const RadialPotential& pot, double r, int n) {
    if (n < 1) {
        throw parameter_error("dimension must be >= 1");
    }
    const AxisFrame f = axis_frame(pot, r);
    // u = log det H = (n-1) log phi' + log (r phi')'
    const double up = (n - 1) * f.Bp / f.B + f.Ap / f.A;
    const double upp = (n - 1) * (f.Bpp / f.B - sq(f.Bp / f.B)) + f.App / f.A -
                       sq(f.Ap / f.A);
    return -4.0 * kPi * ((n - 1) * up / f.B + (up + r * upp) / f.A);
}

CurvatureReport curvature_invariants(const RadialPotential& pot, double r) {
    const AxisFrame f = axis_frame(pot, r);
    CurvatureReport out;
    out.r = r;
    out.det_h = f.A * f.B;

    // Nonzero curvature components at the axis point, unitary frame up to
    // the diagonal normalization divided out below.
    const double r1111 = -(f.Ap + r * f.App) + r * sq(f.Ap) / f.A;
    const double r2222 = -2.0 * f.Bp;
    const double mixed = -(f.Bp + r * f.Bpp) + r * sq(f.Bp) / f.B;

    const double up = f.Ap / f.A + f.Bp / f.B;
    const double upp =
        f.App / f.A - sq(f.Ap / f.A) + f.Bpp / f.B - sq(f.Bp / f.B);

    // The mixed component occupies four index slots of the curvature tensor.
    const double x = sq(r1111 / sq(f.A)) + sq(r2222 / sq(f.B)) +
                     4.0 * sq(mixed / (f.A * f.B));
    const double y = sq((up + r * upp) / f.A) + sq(up / f.B);

    const double norm = 16.0 * kPi * kPi;
    out.riem_sq = norm * x;
    out.ric_sq = norm * y;
    out.combo = norm * (x - 4.0 * y);
    out.s = -4.0 * kPi * (up / f.B + (up + r * upp) / f.A);
    return out;
}

PositivityReport is_positive_metric(const RadialPotential& pot,
                                    std::span<const double> grid) {
    if (grid.empty()) {
        throw parameter_error("positivity scan needs a non-empty grid");
    }
    PositivityReport rep;
    bool first = true;
    for (const double r : grid) {
        const double b = pot.derivatives(r).d1;
        const double a = pot.radial_second(r);
        if (first || b < rep.min_first) {
            rep.min_first = b;
            rep.argmin_first = r;
        }
        if (first || a < rep.min_second) {
            rep.min_second = a;
            rep.argmin_second = r;
        }
        first = false;
    }
    rep.positive = rep.min_first > 0.0 && rep.min_second > 0.0;
    return rep;
}

Completeness radial_completeness(const RadialPotential& pot,
                                 Endpoint endpoint) {
    // Arc length along the real ray z = (x, 0): element sqrt(A(x^2)) dx.
    const auto speed = [&](double x) {
        const double a = pot.radial_second(x * x);
        if (!(a > 0.0)) {
            throw positivity_error("metric degenerate along the ray at x = " +
                                   std::to_string(x));
        }
        return std::sqrt(a);
    };

    const double sup = pot.sup_radius();
    const bool outer_infinite =
        endpoint == Endpoint::outer && !std::isfinite(sup);
    const double sup_x = std::isfinite(sup) ? std::sqrt(sup) : 1.0;

    // Shell k in the ray coordinate x.
    const auto shell_bounds = [&](int k, double& lo, double& hi) {
        if (endpoint == Endpoint::inner) {
            const double x0 = 0.5 * sup_x;
            lo = x0 * std::ldexp(1.0, -k - 1);
            hi = x0 * std::ldexp(1.0, -k);
        } else if (outer_infinite) {
            lo = std::ldexp(1.0, k);
            hi = std::ldexp(1.0, k + 1);
        } else {
            const double d0 = 0.5 * sup_x;
            lo = sup_x - d0 * std::ldexp(1.0, -k);
            hi = sup_x - d0 * std::ldexp(1.0, -k - 1);
        }
    };

    constexpr int kMaxShells = 64;
    constexpr double kFiniteShell = 1e-10;
    constexpr double kDivergentPartial = 1e6;
    constexpr double kStagnationFloor = 1e-8;

    double partial = 0.0;
    double history[kMaxShells];
    for (int k = 0; k < kMaxShells; ++k) {
        double lo, hi;
        shell_bounds(k, lo, hi);
        const double inc = integrate(speed, lo, hi, 1e-13, 1e-9, 200).value;
        partial += inc;
        history[k] = inc;
        if (inc < kFiniteShell) {
            return Completeness::finite_distance;
        }
        if (partial > kDivergentPartial) {
            return Completeness::infinite_distance;
        }
        // Shell increments of a convergent tail must decay; increments that
        // hold their size across eight more octaves certify divergence.
        if (k >= 24 && inc > kStagnationFloor && inc > 0.9 * history[k - 8]) {
            return Completeness::infinite_distance;
        }
    }
    throw inconclusive_error("completeness probe exhausted its shell budget");
}

} // namespace pbk
