#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pbk/radial_geometry.hpp"
#include "pbk/radial_potential.hpp"
#include "pbk/errors.hpp"

#include <array>
#include <cmath>

using pbk::RadialPotential;

namespace {

const double kPi = std::acos(-1.0);

double rel_err(double got, double want) {
    return std::fabs(got - want) / std::max(std::fabs(want), 1.0);
}

// The reference member of the family: log r - log(1 - r^3).
RadialPotential reference() { return RadialPotential::family(1.0, 2.0, 1.0); }

}  // namespace

TEST_CASE("family derivatives match exact fractions at r = 1/2") {
    auto d = reference().derivatives(0.5);
    CHECK(rel_err(d.phi, std::log(0.5) - std::log(1.0 - 0.125)) < 1e-15);
    CHECK(rel_err(d.d1, 20.0 / 7.0) < 1e-14);
    CHECK(rel_err(d.d2, 8.0 / 49.0) < 1e-14);
    CHECK(rel_err(d.d3, 11296.0 / 343.0) < 1e-14);
    CHECK(rel_err(d.d4, -9024.0 / 2401.0) < 1e-13);
}

TEST_CASE("family derivatives match finite differences of the value") {
    auto pot = RadialPotential::family(3.0, 4.0, 0.7);
    double r = 0.6;
    double h = 1e-5;
    auto f = [&](double x) { return pot.derivatives(x).phi; };
    double d1 = (f(r + h) - f(r - h)) / (2.0 * h);
    double d2 = (f(r + h) - 2.0 * f(r) + f(r - h)) / (h * h);
    CHECK(rel_err(pot.derivatives(r).d1, d1) < 1e-8);
    CHECK(rel_err(pot.derivatives(r).d2, d2) < 1e-5);
}

TEST_CASE("fubini_study and flat derivatives are the textbook values") {
    auto fs = RadialPotential::fubini_study().derivatives(2.0);
    CHECK(fs.phi == doctest::Approx(std::log(3.0)).epsilon(1e-15));
    CHECK(fs.d1 == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(fs.d2 == doctest::Approx(-1.0 / 9.0).epsilon(1e-15));
    CHECK(fs.d3 == doctest::Approx(2.0 / 27.0).epsilon(1e-15));
    CHECK(fs.d4 == doctest::Approx(-6.0 / 81.0).epsilon(1e-15));

    auto fl = RadialPotential::flat().derivatives(5.0);
    CHECK(fl.phi == 5.0);
    CHECK(fl.d1 == 1.0);
    CHECK(fl.d2 == 0.0);
    CHECK(fl.d4 == 0.0);
}

TEST_CASE("radial_second agrees with phi' + r phi'' where that is stable") {
    auto pot = RadialPotential::family(2.0, 3.0, 0.5);
    for (double r : {0.3, 0.6, 0.9}) {
        auto d = pot.derivatives(r);
        CHECK(rel_err(pot.radial_second(r), d.d1 + r * d.d2) < 1e-11);
    }
    auto fs = RadialPotential::fubini_study();
    CHECK(rel_err(fs.radial_second(3.0), 1.0 / 16.0) < 1e-15);
    CHECK(RadialPotential::flat().radial_second(7.0) == 1.0);
}

TEST_CASE("radial_second survives the small-radius cancellation") {
    // For the reference member, (r phi')' = 9 r^2 / (1 - r^3)^2. Near r = 0
    // the naive phi' + r phi'' subtracts two terms of size 1/r to produce
    // a result of size r^2; the closed form must not inherit that noise.
    auto pot = reference();
    for (double r : {1e-3, 1e-5, 1e-7}) {
        double want = 9.0 * r * r / std::pow(1.0 - r * r * r, 2.0);
        CHECK(std::fabs(pot.radial_second(r) - want) / want < 1e-13);
    }
}

TEST_CASE("metric determinant factors through the axis eigenvalues") {
    auto pot = reference();
    // At r = 1/2: phi' = 20/7 and (r phi')' = 144/49.
    CHECK(rel_err(pbk::metric_determinant(pot, 0.5, 2), 2880.0 / 343.0) < 1e-13);
    CHECK(rel_err(pbk::metric_determinant(pot, 0.5, 1), 144.0 / 49.0) < 1e-13);
    CHECK(rel_err(pbk::metric_determinant(pot, 0.5, 3),
                  (20.0 / 7.0) * (20.0 / 7.0) * (144.0 / 49.0)) < 1e-13);
    CHECK(pbk::metric_determinant(RadialPotential::flat(), 2.0, 4) == 1.0);
}

TEST_CASE("scalar curvature hits the known constants") {
    auto pot = reference();
    for (double r : {0.1, 0.35, 0.5, 0.75, 0.9}) {
        CHECK(rel_err(pbk::scalar_curvature(pot, r, 2), -24.0 * kPi) < 1e-11);
    }
    // Scaling the potential by m scales the curvature by 1/m, for every
    // (lambda, xi) in the admissible range.
    struct Probe { double m, lambda, xi, r; };
    for (Probe p : {Probe{3, 2, 1, 0.6}, Probe{4, 2, 1, 0.4},
                    Probe{1, 3, 1, 0.4}, Probe{2, 5, 0.25, 0.8},
                    Probe{1, 2, 8, 0.3}}) {
        auto fam = RadialPotential::family(p.m, p.lambda, p.xi);
        CHECK(rel_err(pbk::scalar_curvature(fam, p.r, 2), -24.0 * kPi / p.m) < 1e-10);
    }
    for (double r : {0.5, 2.0, 17.0}) {
        CHECK(rel_err(pbk::scalar_curvature(RadialPotential::fubini_study(), r, 1),
                      8.0 * kPi) < 1e-11);
        CHECK(std::fabs(pbk::scalar_curvature(RadialPotential::flat(), r, 3)) < 1e-11);
    }
}

TEST_CASE("curvature invariants are radius-independent at constant scalar curvature") {
    auto pot = reference();
    double combo0 = pbk::curvature_invariants(pot, 0.2).combo;
    for (double r : {0.2, 0.5, 0.8}) {
        auto rep = pbk::curvature_invariants(pot, r);
        CHECK(rep.riem_sq > 0.0);
        CHECK(rep.ric_sq > 0.0);
        CHECK(rel_err(rep.s, -24.0 * kPi) < 1e-10);
        CHECK(rel_err(rep.combo, -960.0 * kPi * kPi) < 1e-8);
        CHECK(std::fabs(rep.combo - combo0) / std::fabs(combo0) < 1e-7);
    }
    auto rep = pbk::curvature_invariants(pot, 0.5);
    CHECK(rel_err(rep.det_h, 2880.0 / 343.0) < 1e-12);
}

TEST_CASE("custom profiles reproduce the closed-form member by differencing") {
    auto custom = RadialPotential::custom(
        [](double r) { return std::log(r) - std::log1p(-r * r * r); }, 1.0);
    auto exact = reference();
    for (double r : {0.4, 0.5, 0.6}) {
        auto a = custom.derivatives(r);
        auto b = exact.derivatives(r);
        CHECK(rel_err(a.d1, b.d1) < 1e-10);
        CHECK(rel_err(a.d2, b.d2) < 1e-8);
        CHECK(rel_err(a.d3, b.d3) < 1e-6);
        CHECK(rel_err(a.d4, b.d4) < 1e-4);
        CHECK(rel_err(pbk::scalar_curvature(custom, r, 2), -24.0 * kPi) < 1e-6);
    }
}

TEST_CASE("positivity scan locates the grid minima") {
    auto pot = reference();
    std::array<double, 5> grid = {0.1, 0.3, 0.5, 0.7, 0.9};
    auto rep = pbk::is_positive_metric(pot, grid);
    CHECK(rep.positive);
    CHECK(rep.min_first > 0.0);
    CHECK(rep.min_second > 0.0);
    // phi' = (1 + 2 r^3) / (r (1 - r^3)) dips in the middle of (0, 1).
    CHECK(rep.argmin_first == 0.5);
}

TEST_CASE("nonpositive data raises positivity_error") {
    auto bad = RadialPotential::custom([](double r) { return -r; }, 10.0);
    CHECK_THROWS_AS(pbk::metric_determinant(bad, 1.0, 2), pbk::positivity_error);
    CHECK_THROWS_AS(pbk::curvature_invariants(bad, 1.0), pbk::positivity_error);
}

TEST_CASE("domain and parameter validation") {
    auto pot = reference();
    CHECK_THROWS_AS(pot.derivatives(0.0), pbk::domain_error);
    CHECK_THROWS_AS(pot.derivatives(1.0), pbk::domain_error);   // sup radius
    CHECK_THROWS_AS(pot.derivatives(-0.5), pbk::domain_error);
    CHECK_THROWS_AS(RadialPotential::family(0.5, 2.0, 1.0), pbk::parameter_error);
    CHECK_THROWS_AS(RadialPotential::family(1.0, 0.0, 1.0), pbk::parameter_error);
    CHECK_THROWS_AS(RadialPotential::family(1.0, 2.0, -1.0), pbk::parameter_error);
    CHECK_THROWS_AS(pbk::scalar_curvature(pot, 0.5, 0), pbk::parameter_error);
    // sup radius of the family follows xi and lambda: (1/8)^(-1/3) = 2.
    CHECK(RadialPotential::family(1.0, 2.0, 0.125).sup_radius() ==
          doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("radial rays classify as finite or infinite in length") {
    auto pot = reference();
    CHECK(pbk::radial_completeness(pot, pbk::Endpoint::inner) ==
          pbk::Completeness::finite_distance);
    CHECK(pbk::radial_completeness(pot, pbk::Endpoint::outer) ==
          pbk::Completeness::infinite_distance);

    auto flat = RadialPotential::flat();
    CHECK(pbk::radial_completeness(flat, pbk::Endpoint::inner) ==
          pbk::Completeness::finite_distance);
    CHECK(pbk::radial_completeness(flat, pbk::Endpoint::outer) ==
          pbk::Completeness::infinite_distance);

    // Fubini-Study has finite diameter.
    auto fs = RadialPotential::fubini_study();
    CHECK(pbk::radial_completeness(fs, pbk::Endpoint::outer) ==
          pbk::Completeness::finite_distance);

    // Steeper vanishing order at the puncture stays finite too.
    auto steep = RadialPotential::family(1.0, 3.0, 1.0);
    CHECK(pbk::radial_completeness(steep, pbk::Endpoint::inner) ==
          pbk::Completeness::finite_distance);
}
