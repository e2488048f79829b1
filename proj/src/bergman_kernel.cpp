#include "pbk/bergman_kernel.hpp"

#include "pbk/errors.hpp"
#include "pbk/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace pbk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_disk_level(int m) {
    if (m < 3) {
        throw parameter_error("disk kernels need level m >= 3, got " +
                              std::to_string(m));
    }
}

double point_radius(SplitPoint p) {
    if (p.x < 0.0 || p.y < 0.0) {
        throw parameter_error("split point needs x, y >= 0");
    }
    return p.r();
}

void require_unit_radius(double r) {
    if (!(r > 0.0) || !(r < 1.0)) {
        throw domain_error("kernel point radius " + std::to_string(r) +
                           " outside (0, 1)");
    }
}

// Inverse norm coefficient of total degree s, divided by the (s+1) r^s
// degree collapse already applied by the caller:
// c_s = (4/3)(s+1) / (Beta(alpha_s, m-2) * bracket_s).
double log_degree_coeff(int m, int s) {
    const double a = static_cast<double>(s - m) / 3.0 + 1.0;
    const double bracket = (3.0 * a + (m - 2)) / (a + (m - 2));
    return std::log(4.0 / 3.0) + std::log(static_cast<double>(s + 1)) -
           log_beta(a, static_cast<double>(m - 2)) - std::log(bracket);
}

struct ClassSum {
    double value = 0.0;       // before the (1-r^3)^m prefactor
    double tail_bound = 0.0;  // same scale
    std::int64_t terms = 0;
};

// Sums c_s r^(s-m) over one residue class s = s0, s0+3, ... with a certified
// geometric tail. The term ratio is bounded by
//   rho_s = r^3 (s+4)/(s+1) (alpha_s + m - 2)/alpha_s
// because the bracket factor is increasing in s; rho_s decreases toward r^3.
ClassSum sum_residue_class(int m, int s0, double r, double tol_abs,
                           std::int64_t max_terms) {
    const double logr = std::log(r);
    const double r3 = r * r * r;
    ClassSum out;
    for (int s = s0;; s += 3) {
        if (out.terms >= max_terms) {
            throw budget_error("kernel term budget exhausted in residue class");
        }
        const double term = std::exp(log_degree_coeff(m, s) + (s - m) * logr);
        out.value += term;
        ++out.terms;
        const double a = static_cast<double>(s - m) / 3.0 + 1.0;
        const double rho = r3 * (s + 4.0) / (s + 1.0) * (a + (m - 2)) / a;
        if (rho < 1.0) {
            const double tail = term * rho / (1.0 - rho);
            if (tail <= tol_abs) {
                out.tail_bound = tail;
                return out;
            }
        }
    }
}

} // namespace

double graded_constant(int m) {
    require_disk_level(m);
    return (4.0 / 3.0) * (m - 1) * (m - 2);
}

KernelEvaluation graded_kernel(int m, SplitPoint p, double tol,
                               std::int64_t max_terms) {
    require_disk_level(m);
    const double r = point_radius(p);
    require_unit_radius(r);
    const double R = r * r * r;
    const double pref = std::exp(m * std::log1p(-R));
    const double cm = graded_constant(m);

    // sum_i C(m+i-1, i) R^i with ratio R (m+i)/(i+1), decreasing to R < 1.
    double term = 1.0;
    double sum = 0.0;
    std::int64_t i = 0;
    for (;; ++i) {
        if (i >= max_terms) {
            throw budget_error("graded kernel term budget exhausted");
        }
        sum += term;
        const double q = R * (m + i) / (i + 1.0);
        if (q < 1.0) {
            const double tail = cm * pref * term * q / (1.0 - q);
            const double value = cm * pref * sum;
            if (tail <= tol * std::min(1.0, value)) {
                return {value, tail, i + 1, m, r};
            }
        }
        term *= R * (m + i) / (i + 1.0);
    }
}

KernelEvaluation full_kernel(int m, SplitPoint p, double tol,
                             std::int64_t max_terms) {
    require_disk_level(m);
    const double r = point_radius(p);
    require_unit_radius(r);
    const double pref = std::exp(m * std::log1p(-r * r * r));

    KernelEvaluation out{0.0, 0.0, 0, m, r};
    double raw = 0.0;
    double raw_tail = 0.0;
    // Total degrees start at m-2 (the convergence frontier is s > m-3) and
    // split into residue classes mod 3 with starts m-2, m-1, m.
    for (const int s0 : {m - 2, m - 1, m}) {
        const double budget =
            tol * std::min(1.0, pref * raw) / 3.0 / pref;
        const ClassSum cs = sum_residue_class(
            m, s0, r, std::max(budget, tol * 1e-3 / pref),
            max_terms - out.terms);
        raw += cs.value;
        raw_tail += cs.tail_bound;
        out.terms += cs.terms;
    }
    out.value = pref * raw;
    out.tail_bound = pref * raw_tail;
    return out;
}

KernelEvaluation residue_kernel(int m, int residue, SplitPoint p, double tol,
                                std::int64_t max_terms) {
    require_disk_level(m);
    if (residue < 0 || residue > 2) {
        throw parameter_error("residue class must be 0, 1, or 2");
    }
    const double r = point_radius(p);
    require_unit_radius(r);
    const double pref = std::exp(m * std::log1p(-r * r * r));
    // Class starts: residue 0 -> s = m, 1 -> m+1 is congruent to m-2, 2 -> m-1.
    const int s0 = (residue == 0) ? m : (residue == 1 ? m - 2 : m - 1);
    const ClassSum cs =
        sum_residue_class(m, s0, r, tol / pref, max_terms);
    return {pref * cs.value, pref * cs.tail_bound, cs.terms, m, r};
}

KernelEvaluation flat_kernel(int m, double r, int dim) {
    if (m < 1 || dim < 1) {
        throw parameter_error("flat kernel needs m >= 1 and dim >= 1");
    }
    if (!(r > 0.0)) {
        throw domain_error("flat kernel needs r > 0");
    }
    // The multi-index sum collapses per total degree to m^dim e^(-mr) sum (mr)^s / s!.
    const double pref = std::pow(double(m), dim) * std::exp(-double(m) * r);
    const double x = m * r;
    double term = 1.0;
    double sum = 0.0;
    std::int64_t s = 0;
    for (;; ++s) {
        sum += term;
        const double q = x / (s + 1.0);
        if (q < 1.0) {
            const double tail = pref * term * q / (1.0 - q);
            const double value = pref * sum;
            if (tail <= 1e-14 * value) {
                return {value, tail, s + 1, m, r};
            }
        }
        term *= x / (s + 1.0);
    }
}

KernelEvaluation fs_kernel(int m, double r) {
    if (m < 1) {
        throw parameter_error("rational-curve kernel needs m >= 1");
    }
    if (!(r > 0.0)) {
        throw domain_error("rational-curve kernel needs r > 0");
    }
    // Finite basis j = 0..m: (1+r)^-m (m+1) sum C(m,j) r^j.
    const double pref = (m + 1.0) * std::exp(-m * std::log1p(r));
    double sum = 0.0;
    double term = 1.0;  // C(m,0) r^0
    for (int j = 0; j <= m; ++j) {
        sum += term;
        term *= r * (m - j) / (j + 1.0);
    }
    const double value = pref * sum;
    return {value, 1e-15 * value * (m + 1), m + 1, m, r};
}

GeneratingCheck generating_check(int m, double r, int i_max) {
    if (m < 1) {
        throw parameter_error("generating identity needs m >= 1");
    }
    if (!(r > 0.0) || !(r < 1.0)) {
        throw domain_error("generating identity needs 0 < r < 1");
    }
    if (i_max < 0) {
        throw parameter_error("negative truncation index");
    }
    // Extended precision keeps the floating-point noise floor well below the
    // analytic truncation tail, so the reported tail bound stays an honest
    // upper bound for the observed residual.
    const long double rl = r;
    const long double r3 = rl * rl * rl;
    GeneratingCheck out;
    const long double lhs =
        std::exp(static_cast<long double>(m) * (std::log(rl) - std::log1p(-r3)));

    long double sum = 0.0L;
    long double comp = 0.0L;  // Kahan compensation
    long double term = std::pow(rl, static_cast<long double>(m));
    long double q = kInf;
    for (int i = 0;; ++i) {
        const long double y = term - comp;
        const long double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        q = r3 * (m + i) / (i + 1.0L);
        if (i == i_max) {
            break;
        }
        term *= q;
    }
    out.lhs = static_cast<double>(lhs);
    out.partial = static_cast<double>(sum);
    out.residual = static_cast<double>(std::abs(lhs - sum));
    // Truncation tail plus a rounding allowance, so the bound certifies the
    // floating-point residual as well. Without the allowance an exactly
    // geometric series (m = 1) leaves zero slack and the comparison against
    // the observed residual becomes a coin flip in the last ulp.
    const long double rounding =
        8.0L * std::numeric_limits<long double>::epsilon() *
        (std::abs(lhs) + std::abs(sum));
    out.tail_bound =
        (q < 1.0L) ? static_cast<double>(term * q / (1.0L - q) + rounding)
                   : kInf;
    return out;
}

ConstancyReport constancy_report(int m, Subspace which, const double* radii,
                                 int count, double tol) {
    if (count < 1) {
        throw parameter_error("constancy report needs at least one radius");
    }
    std::vector<double> values;
    values.reserve(count);
    for (int i = 0; i < count; ++i) {
        const SplitPoint p{0.6 * radii[i], 0.4 * radii[i]};
        const KernelEvaluation e = (which == Subspace::graded)
                                       ? graded_kernel(m, p, tol)
                                       : full_kernel(m, p, tol);
        values.push_back(e.value);
    }
    ConstancyReport rep;
    rep.min_value = *std::min_element(values.begin(), values.end());
    rep.max_value = *std::max_element(values.begin(), values.end());
    if (which == Subspace::graded) {
        rep.reference = graded_constant(m);
    } else {
        double mean = 0.0;
        for (const double v : values) {
            mean += v;
        }
        rep.reference = mean / count;
    }
    double dev = 0.0;
    for (const double v : values) {
        dev = std::max(dev, std::abs(v - rep.reference) / rep.reference);
    }
    rep.max_rel_deviation = dev;
    return rep;
}

} // namespace pbk
