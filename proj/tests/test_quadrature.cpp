#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pbk/quadrature.hpp"
#include "pbk/errors.hpp"

#include <cmath>

using pbk::integrate;

TEST_CASE("polynomials integrate to machine precision in one panel") {
    auto r = integrate([](double x) { return x * x; }, 0.0, 1.0, 1e-14, 1e-14);
    CHECK(std::fabs(r.value - 1.0 / 3.0) < 1e-15);
    CHECK(r.intervals == 1);

    // Gauss 7 / Kronrod 15 is exact through degree 22.
    auto p = integrate([](double x) { return std::pow(x, 21); }, -1.0, 2.0,
                       1e-13, 1e-13);
    double exact = (std::pow(2.0, 22.0) - 1.0) / 22.0;
    CHECK(std::fabs(p.value - exact) / exact < 1e-14);
}

TEST_CASE("smooth transcendental integrands converge") {
    double pi = std::acos(-1.0);
    auto s = integrate([](double x) { return std::sin(x); }, 0.0, pi, 0.0, 1e-13);
    CHECK(std::fabs(s.value - 2.0) < 1e-13);

    // int_0^3 exp(-x^2) dx = sqrt(pi)/2 erf(3)
    auto g = integrate([](double x) { return std::exp(-x * x); }, 0.0, 3.0,
                       0.0, 1e-13);
    double exact = 0.5 * std::sqrt(pi) * std::erf(3.0);
    CHECK(std::fabs(g.value - exact) / exact < 1e-13);
    CHECK(g.error_bound < 1e-10);
}

TEST_CASE("oscillatory integrands force adaptive subdivision") {
    auto r = integrate([](double x) { return std::sin(10.0 * x); }, 0.0, 20.0,
                       0.0, 1e-12);
    double exact = (1.0 - std::cos(200.0)) / 10.0;
    CHECK(std::fabs(r.value - exact) < 1e-11);
    CHECK(r.intervals > 4);
}

TEST_CASE("reported error bound covers the true error") {
    auto r = integrate([](double x) { return std::exp(-x * x); }, 0.0, 3.0,
                       0.0, 1e-10);
    double pi = std::acos(-1.0);
    double exact = 0.5 * std::sqrt(pi) * std::erf(3.0);
    CHECK(std::fabs(r.value - exact) <= r.error_bound + 1e-14);
}

TEST_CASE("integrable endpoint singularities are handled") {
    // Nodes are interior, so x^(-1/3) is finite at every evaluation point.
    auto r = integrate([](double x) { return std::pow(x, -1.0 / 3.0); }, 0.0,
                       1.0, 1e-9, 1e-9, 500);
    CHECK(std::fabs(r.value - 1.5) < 1e-8);
}

TEST_CASE("interval budget exhaustion is reported, not silently truncated") {
    CHECK_THROWS_AS(integrate([](double x) { return std::sin(50.0 * x); }, 0.0,
                              100.0, 0.0, 1e-13, 3),
                    pbk::budget_error);
}

TEST_CASE("degenerate bounds are rejected") {
    CHECK_THROWS_AS(integrate([](double x) { return x; }, 1.0, 1.0, 1e-9, 1e-9),
                    pbk::parameter_error);
    CHECK_THROWS_AS(integrate([](double x) { return x; }, 2.0, 1.0, 1e-9, 1e-9),
                    pbk::parameter_error);
}
