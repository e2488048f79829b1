#include "pbk/section_norms.hpp"

#include "pbk/errors.hpp"
#include "pbk/quadrature.hpp"
#include "pbk/special_functions.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace pbk {

namespace {

void require_nonnegative(int j, int k) {
    if (j < 0 || k < 0) {
        throw parameter_error("monomial exponents must be nonnegative");
    }
}

// alpha - 1 is the radial exponent of the reduced one-dimensional integral;
// convergence at the origin is exactly alpha > 0.
double alpha_of(int m, int j, int k) {
    return static_cast<double>(j + k - m) / 3.0 + 1.0;
}

double log_angular(int j, int k) {
    return log_factorial(j) + log_factorial(k) - log_factorial(j + k + 1);
}

} // namespace

Rational angular_factor(int j, int k) {
    require_nonnegative(j, k);
    if (j + k > 10000) {
        throw budget_error("angular factor budget is j + k <= 10000");
    }
    // j! k! / (2 (j+k+1)!) = 1 / (2 (j+k+1) C(j+k, j))
    const BigInt denom =
        2 * BigInt(j + k + 1) * binomial_exact(unsigned(j + k), unsigned(j));
    return Rational(1, denom);
}

void require_convergent(int m, int j, int k) {
    require_nonnegative(j, k);
    if (m < 3) {
        throw divergent_index_error("norm integral diverges: m >= 3 failed (m = " +
                                    std::to_string(m) + ")");
    }
    if (j + k <= m - 3) {
        throw divergent_index_error(
            "norm integral diverges: j + k > m - 3 failed (j + k = " +
            std::to_string(j + k) + ", m - 3 = " + std::to_string(m - 3) + ")");
    }
}

NormValue norm_closed(int m, int j, int k) {
    require_convergent(m, j, k);
    const double a = alpha_of(m, j, k);
    const double log_pref = std::log(0.75) + log_angular(j, k);
    const double beta = log_beta(a, static_cast<double>(m - 2));
    const double bracket = 1.0 + 2.0 * a / (a + (m - 2));
    const double value = std::exp(log_pref + beta) * bracket;
    return {value, 1e-14 * value, std::nullopt, NormMethod::closed_form};
}

NormValue norm_exact_graded(int m, int i, int j) {
    if (m < 3) {
        throw divergent_index_error(
            "graded norms need m >= 3 (m = " + std::to_string(m) + ")");
    }
    if (i < 0 || j < 0 || j > m + 3 * i) {
        throw parameter_error("graded index needs 0 <= j <= m + 3i");
    }
    Rational value(3, 4 * (m - 1) * (m - 2));
    value /= Rational(binomial_exact(unsigned(m + 3 * i), unsigned(j)));
    value /= Rational(binomial_exact(unsigned(m + i - 1), unsigned(i)));
    const double approx = to_double(value);
    NormValue out{approx, std::abs(approx) * 1e-16, value,
                  NormMethod::exact_graded};
    return out;
}

NormValue norm_quadrature(int m, int j, int k, double rel_tol,
                          int max_intervals) {
    require_convergent(m, j, k);
    // Substituting x = u^3 clears the fractional power at the origin:
    // the u-integrand below is polynomial.
    const int upow = j + k - m + 2;  // >= 0 exactly when the index converges
    const auto integrand = [&](double u) {
        const double u3 = u * u * u;
        return 3.0 * std::pow(u, upow) * (1.0 + 2.0 * u3) *
               std::pow(1.0 - u3, m - 3);
    };
    const QuadratureResult q =
        integrate(integrand, 0.0, 1.0, 1e-300, rel_tol, max_intervals);
    const double pref = 0.75 * std::exp(log_angular(j, k));
    return {pref * q.value, pref * q.error_bound, std::nullopt,
            NormMethod::quadrature};
}

GradedIndex nearest_convergent(int m, int j, int k) {
    require_nonnegative(j, k);
    if (m < 3) {
        throw parameter_error("no convergent neighbor exists below m = 3");
    }
    const int deficit = (m - 2) - (j + k);
    if (deficit <= 0) {
        return {m, j, k};
    }
    // Split the shortfall as evenly as possible, j first.
    return {m, j + (deficit + 1) / 2, k + deficit / 2};
}

DivergenceProbe divergence_probe(int m, int j, int k, double target,
                                 int max_shells) {
    require_nonnegative(j, k);
    if (m < 3) {
        throw parameter_error("divergence probe is defined for m >= 3");
    }
    if (j + k > m - 3) {
        throw parameter_error("index converges; nothing to probe");
    }
    // In u = log x the integrand becomes exp(alpha u) (1 + 2 e^u)(1 - e^u)^(m-3)
    // with alpha <= 0, so the partial integral over [u_min, 0] grows without
    // bound as u_min -> -infinity. Dyadic shells reach any finite target.
    const double a = alpha_of(m, j, k);
    const auto integrand = [&](double u) {
        const double eu = std::exp(u);
        return std::exp(a * u) * (1.0 + 2.0 * eu) * std::pow(1.0 - eu, m - 3);
    };
    const double pref = 0.75 * std::exp(log_angular(j, k));

    DivergenceProbe probe{0.0, 0, false};
    double raw = integrate(integrand, -1.0, 0.0, 1e-13, 1e-8, 200).value;
    for (int s = 0; s < max_shells; ++s) {
        probe.partial = pref * raw;
        probe.shells = s;
        if (!std::isfinite(probe.partial) || probe.partial > target) {
            probe.exceeded = true;
            return probe;
        }
        const double lo = -std::ldexp(1.0, s + 1);
        const double hi = -std::ldexp(1.0, s);
        // Exponential blow-up for alpha < 0 overflows the shell integral
        // eventually; infinity is a legitimate lower bound certificate.
        if (a < 0.0 && -a * -lo > 700.0) {
            probe.partial = std::numeric_limits<double>::infinity();
            probe.exceeded = true;
            return probe;
        }
        raw += integrate(integrand, lo, hi, 1e-13, 1e-8, 200).value;
    }
    probe.partial = pref * raw;
    probe.shells = max_shells;
    probe.exceeded = probe.partial > target;
    return probe;
}

} // namespace pbk
