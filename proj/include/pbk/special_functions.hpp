#pragma once

namespace pbk {

/// log Gamma(x) for x > 0 via a Lanczos approximation (g = 7, 9 coefficients),
/// with one recurrence step for x < 0.5. Absolute error is a few ulp of the
/// result; relative error < 1e-13 away from the zeros of log Gamma.
/// Throws domain_error for x <= 0.
double log_gamma(double x);

/// log Beta(a, b) = log Gamma(a) + log Gamma(b) - log Gamma(a + b), a, b > 0.
double log_beta(double a, double b);

/// log(n!) = log Gamma(n + 1).
double log_factorial(unsigned n);

} // namespace pbk
