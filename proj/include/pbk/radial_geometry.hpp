#pragma once

#include "pbk/radial_potential.hpp"

#include <span>

namespace pbk {

/// Determinant of the complex Hessian of phi at radius r in dimension n:
/// det H = (phi')^(n-1) * (r phi')'. Throws positivity_error unless both
/// factors are positive.
double metric_determinant(const RadialPotential& pot, double r, int n);

/// Scalar curvature of the metric with Kahler form (i/2pi) ddbar phi:
/// s = -4 pi [ (n-1) u'/phi' + (r u')'/(r phi')' ], u = log det H.
double scalar_curvature(const RadialPotential& pot, double r, int n);

struct CurvatureReport {
    double r;
    double det_h;
    double s;
    double riem_sq;  // |R|^2,   >= 0
    double ric_sq;   // |Ric|^2, >= 0
    double combo;    // riem_sq - 4 * ric_sq
};

/// Full curvature data at radius r for n = 2. Norms are squared norms of the
/// complex curvature tensor and complex Ricci tensor in a unitary frame of
/// the metric (i/2pi) ddbar phi, scaled so that |T|^2 = 4 (2pi)^2 sum |T_..|^2 / (H...),
/// the normalization under which riem_sq - 4 ric_sq is radius-independent for
/// the constant-scalar-curvature members of the family.
CurvatureReport curvature_invariants(const RadialPotential& pot, double r);

struct PositivityReport {
    double min_first;      // min over grid of phi'
    double min_second;     // min over grid of (r phi')'
    double argmin_first;
    double argmin_second;
    bool positive;         // both minima > 0
};

PositivityReport is_positive_metric(const RadialPotential& pot, std::span<const double> grid);

enum class Endpoint { inner, outer };
enum class Completeness { finite_distance, infinite_distance };

/// Classifies the improper arc-length integral int sqrt((r phi')'(x^2)) dx of a
/// radial ray toward the endpoint (constant metric factors do not affect
/// convergence). Dyadic shells toward the endpoint; finite when successive
/// shells change the integral by < 1e-10, infinite when the partial integral
/// exceeds 1e6 or the shell increments stop decaying across dyadic scales.
/// Throws inconclusive_error when the budget ends without a verdict.
Completeness radial_completeness(const RadialPotential& pot, Endpoint endpoint);

} // namespace pbk
