#pragma once

#include <functional>
#include <limits>

namespace pbk {

enum class PotentialKind { punctured_disk_family, fubini_study, flat, custom_profile };

/// Value and first four radial derivatives of a potential at one radius.
struct Derivs {
    double phi;
    double d1;
    double d2;
    double d3;
    double d4;
};

/// A rotation-invariant Kahler potential phi(r), r = |z_1|^2 + ... + |z_n|^2,
/// defined on the open interval (0, sup_radius).
class RadialPotential {
public:
    /// m * ((lambda/2) log r - log(1 - xi r^(lambda+1))) on (0, xi^(-1/(lambda+1))).
    /// Requires m >= 1, lambda > 0, xi > 0.
    static RadialPotential family(double m_scale, double lambda, double xi);

    /// log(1 + r) on (0, inf).
    static RadialPotential fubini_study();

    /// r on (0, inf).
    static RadialPotential flat();

    /// Derivatives of an arbitrary profile via central differences with one
    /// Richardson extrapolation level; step max(1e-5, 1e-4 r), clamped to the
    /// domain. sup_radius may be infinite.
    static RadialPotential custom(std::function<double(double)> profile, double sup_radius);

    PotentialKind kind() const { return kind_; }
    double sup_radius() const { return sup_radius_; }

    // family parameters; parameter_error for other kinds
    double m_scale() const;
    double lambda() const;
    double xi() const;

    /// Throws domain_error unless 0 < r < sup_radius.
    Derivs derivatives(double r) const;

    /// (r phi')', the radial eigenvalue of the complex Hessian, in a form
    /// free of the phi' + r phi'' cancellation that loses all precision as
    /// r -> 0. Same domain contract as derivatives().
    double radial_second(double r) const;

private:
    RadialPotential() = default;

    PotentialKind kind_ = PotentialKind::flat;
    double sup_radius_ = std::numeric_limits<double>::infinity();
    double m_ = 1.0, lambda_ = 2.0, xi_ = 1.0;
    std::function<double(double)> profile_;
};

} // namespace pbk
