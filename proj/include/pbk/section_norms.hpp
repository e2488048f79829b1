#pragma once

#include "pbk/rational.hpp"

#include <optional>

namespace pbk {

/// Monomial z_1^j z_2^k against the level-m weight; the norm integral
/// converges exactly when m >= 3 and j + k > m - 3.
struct GradedIndex {
    int m;
    int j;
    int k;
};

enum class NormMethod { closed_form, exact_graded, quadrature };

struct NormValue {
    double value;
    double error_bound;             // absolute
    std::optional<Rational> exact;  // present for the exact-graded route
    NormMethod method;
};

/// j! k! / (2 (j+k+1)!) as an exact rational. Throws budget_error past
/// j + k = 10^4.
Rational angular_factor(int j, int k);

/// Throws divergent_index_error (naming the failed inequality) unless
/// m >= 3 and j + k > m - 3; parameter_error for negative j or k.
void require_convergent(int m, int j, int k);

/// Closed form: (3 j! k! / (4 (j+k+1)!)) * Beta(a, m-2) * (1 + 2a/(a+m-2)),
/// a = (j+k-m)/3 + 1, evaluated in log space.
NormValue norm_closed(int m, int j, int k);

/// Exact rational on the graded sublattice j + k = m + 3i:
/// 3 / (4 (m-1)(m-2)) * C(m+3i, j)^-1 * C(m+i-1, i)^-1.
NormValue norm_exact_graded(int m, int i, int j);

/// Reduced one-dimensional integral after x = u^3, removing the endpoint
/// singularity: (3/4) j!k!/(j+k+1)! * int_0^1 3 u^(j+k-m+2) (1+2u^3) (1-u^3)^(m-3) du.
NormValue norm_quadrature(int m, int j, int k, double rel_tol = 1e-12,
                          int max_intervals = 2000);

/// Balanced nearest index on the convergence frontier j' + k' = m - 2.
GradedIndex nearest_convergent(int m, int j, int k);

struct DivergenceProbe {
    double partial;  // weighted partial integral reached
    int shells;      // dyadic shells consumed
    bool exceeded;   // partial > target before the budget ran out
};

/// Numerical corroboration that the norm integral of a divergent index blows
/// up: accumulates the weighted integral over [e^(-2^s), 1] in the
/// log-substituted variable until the partial exceeds `target`.
/// Requires m >= 3 and j + k <= m - 3.
DivergenceProbe divergence_probe(int m, int j, int k, double target,
                                 int max_shells = 64);

} // namespace pbk
