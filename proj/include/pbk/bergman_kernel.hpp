#pragma once

#include <cstdint>

namespace pbk {

/// Point of the punctured ball written by split radii x = |z_1|^2, y = |z_2|^2.
struct SplitPoint {
    double x;
    double y;
    double r() const { return x + y; }
};

struct KernelEvaluation {
    double value;
    double tail_bound;  // certified bound on the truncated remainder
    std::int64_t terms;
    int level;
    double r;
};

/// (4/3)(m-1)(m-2): the constant value every graded kernel evaluation must
/// reproduce. Requires m >= 3.
double graded_constant(int m);

/// Weighted kernel of the graded subspace at level m, summed until the
/// certified tail bound drops below tol * min(1, value). Requires m >= 3 and
/// 0 < r < 1 with r the radius of `p`.
KernelEvaluation graded_kernel(int m, SplitPoint p, double tol = 1e-12,
                               std::int64_t max_terms = 1000000);

/// Weighted kernel of the full convergent-monomial space at level m.
/// Summation runs per residue class of the total degree mod 3, each with its
/// own certified geometric tail bound.
KernelEvaluation full_kernel(int m, SplitPoint p, double tol = 1e-12,
                             std::int64_t max_terms = 1000000);

/// Kernel of a single residue class (total degree = m + residue mod 3,
/// residue in {0, 1, 2}); residue 0 recovers the graded kernel.
KernelEvaluation residue_kernel(int m, int residue, SplitPoint p,
                                double tol = 1e-12,
                                std::int64_t max_terms = 1000000);

/// Level-m weighted kernel of the Gaussian factor: identically m per
/// dimension; dim-fold product is m^dim.
KernelEvaluation flat_kernel(int m, double r, int dim = 1);

/// Level-m weighted kernel of the rational-curve factor: identically m + 1.
KernelEvaluation fs_kernel(int m, double r);

struct GeneratingCheck {
    double lhs;        // (r/(1-r^3))^m
    double partial;    // truncated binomial series sum
    double residual;   // |lhs - partial|
    /// Analytic bound on the dropped tail plus a rounding allowance, so it
    /// also bounds the floating-point residual above.
    double tail_bound;
};

/// Truncates sum_i C(m+i-1, i) r^(m+3i) at i_max terms and compares with the
/// closed form. Requires m >= 1 and 0 < r < 1.
GeneratingCheck generating_check(int m, double r, int i_max);

enum class Subspace { graded, full };

struct ConstancyReport {
    double min_value;
    double max_value;
    double max_rel_deviation;  // from the analytic constant (graded) or mean (full)
    double reference;
};

/// Evaluates the chosen kernel across a radius grid and reports spread.
ConstancyReport constancy_report(int m, Subspace which, const double* radii,
                                 int count, double tol = 1e-12);

} // namespace pbk
