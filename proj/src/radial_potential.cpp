#include "pbk/radial_potential.hpp"

#include "pbk/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace pbk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Central-difference stencils of order h^2, sharpened once by Richardson
// extrapolation to order h^4. Each derivative gets its own step size so the
// h^2 truncation and the eps/h^k roundoff terms stay balanced.
struct FiniteDifference {
    const std::function<double(double)>& f;
    double r;

    double d1(double h) const { return (f(r + h) - f(r - h)) / (2.0 * h); }
    double d2(double h) const {
        return (f(r + h) - 2.0 * f(r) + f(r - h)) / (h * h);
    }
    double d3(double h) const {
        return (f(r + 2.0 * h) - 2.0 * f(r + h) + 2.0 * f(r - h) -
                f(r - 2.0 * h)) /
               (2.0 * h * h * h);
    }
    double d4(double h) const {
        return (f(r + 2.0 * h) - 4.0 * f(r + h) + 6.0 * f(r) -
                4.0 * f(r - h) + f(r - 2.0 * h)) /
               (h * h * h * h);
    }

    template <typename Rule>
    static double richardson(const Rule& rule, double h) {
        return (4.0 * rule(0.5 * h) - rule(h)) / 3.0;
    }
};

} // namespace

RadialPotential RadialPotential::family(double m_scale, double lambda,
                                        double xi) {
    if (!(m_scale >= 1.0)) {
        throw parameter_error("family coefficient m must be >= 1");
    }
    if (!(lambda > 0.0) || !(xi > 0.0)) {
        throw parameter_error("family requires lambda > 0 and xi > 0");
    }
    RadialPotential p;
    p.kind_ = PotentialKind::punctured_disk_family;
    p.m_ = m_scale;
    p.lambda_ = lambda;
    p.xi_ = xi;
    p.sup_radius_ = std::pow(xi, -1.0 / (lambda + 1.0));
    return p;
}

RadialPotential RadialPotential::fubini_study() {
    RadialPotential p;
    p.kind_ = PotentialKind::fubini_study;
    p.sup_radius_ = kInf;
    return p;
}

RadialPotential RadialPotential::flat() {
    RadialPotential p;
    p.kind_ = PotentialKind::flat;
    p.sup_radius_ = kInf;
    return p;
}

RadialPotential RadialPotential::custom(std::function<double(double)> profile,
                                        double sup_radius) {
    if (!profile) {
        throw parameter_error("custom potential needs a profile function");
    }
    if (!(sup_radius > 0.0)) {
        throw parameter_error("custom potential needs sup_radius > 0");
    }
    RadialPotential p;
    p.kind_ = PotentialKind::custom_profile;
    p.profile_ = std::move(profile);
    p.sup_radius_ = sup_radius;
    return p;
}

double RadialPotential::m_scale() const {
    if (kind_ != PotentialKind::punctured_disk_family) {
        throw parameter_error("m_scale is a family parameter");
    }
    return m_;
}

double RadialPotential::lambda() const {
    if (kind_ != PotentialKind::punctured_disk_family) {
        throw parameter_error("lambda is a family parameter");
    }
    return lambda_;
}

double RadialPotential::xi() const {
    if (kind_ != PotentialKind::punctured_disk_family) {
        throw parameter_error("xi is a family parameter");
    }
    return xi_;
}

Derivs RadialPotential::derivatives(double r) const {
    if (!(r > 0.0) || !(r < sup_radius_)) {
        throw domain_error("radius " + std::to_string(r) +
                           " outside the potential domain (0, " +
                           std::to_string(sup_radius_) + ")");
    }
    switch (kind_) {
    case PotentialKind::punctured_disk_family: {
        const double p = lambda_ + 1.0;
        const double lw = std::log(xi_) + p * std::log(r);
        const double w = std::exp(lw);
        // 1 - w without cancellation near the outer edge.
        const double onemw = -std::expm1(lw);
        if (!(onemw > 0.0)) {
            throw domain_error("family weight degenerate at r = " +
                               std::to_string(r));
        }
        const double log1mw = (w < 0.5) ? std::log1p(-w) : std::log(onemw);
        const double g1 = w / onemw;
        const double g2 = g1 / onemw;
        const double g3 = w * (1.0 + w) / (onemw * onemw * onemw);
        const double g4 =
            w * (1.0 + w * (4.0 + w)) / (onemw * onemw * onemw * onemw);
        const double l = lambda_;
        Derivs d;
        d.phi = m_ * (0.5 * l * std::log(r) - log1mw);
        d.d1 = m_ * (0.5 * l + p * g1) / r;
        d.d2 = m_ * (-0.5 * l + p * (p * g2 - g1)) / (r * r);
        d.d3 = m_ * (l + p * (p * p * g3 - 3.0 * p * g2 + 2.0 * g1)) /
               (r * r * r);
        d.d4 = m_ *
               (-3.0 * l + p * (p * p * p * g4 - 6.0 * p * p * g3 +
                                11.0 * p * g2 - 6.0 * g1)) /
               (r * r * r * r);
        return d;
    }
    case PotentialKind::fubini_study: {
        const double q = 1.0 / (1.0 + r);
        return {std::log1p(r), q, -q * q, 2.0 * q * q * q,
                -6.0 * q * q * q * q};
    }
    case PotentialKind::flat:
        return {r, 1.0, 0.0, 0.0, 0.0};
    case PotentialKind::custom_profile: {
        const double room =
            std::isfinite(sup_radius_) ? std::min(r, sup_radius_ - r) : r;
        const double cap = 0.35 * room;  // keeps every sample inside (0, R)
        const double scale = std::max(r, 0.05);
        const FiniteDifference fd{profile_, r};
        const auto step = [&](double frac) {
            return std::min(frac * scale, cap);
        };
        // Step sizes balance the h^4 truncation left by Richardson against
        // the eps/h^k roundoff, which steepens with the derivative order.
        Derivs d;
        d.phi = profile_(r);
        d.d1 = FiniteDifference::richardson(
            [&](double h) { return fd.d1(h); }, step(1e-3));
        d.d2 = FiniteDifference::richardson(
            [&](double h) { return fd.d2(h); }, step(4e-3));
        d.d3 = FiniteDifference::richardson(
            [&](double h) { return fd.d3(h); }, step(6e-3));
        d.d4 = FiniteDifference::richardson(
            [&](double h) { return fd.d4(h); }, step(1.5e-2));
        return d;
    }
    }
    throw parameter_error("unknown potential kind");
}

double RadialPotential::radial_second(double r) const {
    if (!(r > 0.0) || !(r < sup_radius_)) {
        throw domain_error("radius " + std::to_string(r) +
                           " outside the potential domain (0, " +
                           std::to_string(sup_radius_) + ")");
    }
    switch (kind_) {
    case PotentialKind::punctured_disk_family: {
        // (r phi')' = m p^2 g2 / r with g2 = w / (1-w)^2: the log r part of
        // the potential drops out exactly instead of cancelling in floats.
        const double p = lambda_ + 1.0;
        const double lw = std::log(xi_) + p * std::log(r);
        const double w = std::exp(lw);
        const double onemw = -std::expm1(lw);
        if (!(onemw > 0.0)) {
            throw domain_error("family weight degenerate at r = " +
                               std::to_string(r));
        }
        return m_ * p * p * w / (onemw * onemw) / r;
    }
    case PotentialKind::fubini_study: {
        const double q = 1.0 / (1.0 + r);
        return q * q;
    }
    case PotentialKind::flat:
        return 1.0;
    case PotentialKind::custom_profile: {
        const Derivs d = derivatives(r);
        return d.d1 + r * d.d2;
    }
    }
    throw parameter_error("unknown potential kind");
}

} // namespace pbk
