#include "skewgap/error.hpp"
#include "skewgap/quadrature.hpp"

#include <doctest.h>

#include <cmath>

using namespace skewgap;

TEST_SUITE("quadrature")
{
    TEST_CASE("polynomials are integrated exactly")
    {
        const auto r = integrate([](double x) { return 3.0 * x * x - 2.0 * x + 1.0; }, -1.0, 2.0);
        CHECK(r.value == doctest::Approx(9.0 - 3.0 + 3.0).epsilon(1e-14));
        CHECK(r.intervals == 1);
    }

    TEST_CASE("smooth transcendental integrand")
    {
        const auto r = integrate([](double x) { return std::exp(-x * x); }, 0.0, 3.0, 1e-13);
        CHECK(std::abs(r.value - 0.5 * std::sqrt(M_PI) * std::erf(3.0)) < 1e-13);
    }

    TEST_CASE("inverse square-root end singularity")
    {
        const auto r = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-9);
        CHECK(std::abs(r.value - 2.0) < 1e-8);
        CHECK(r.error < 1e-9);
    }

    TEST_CASE("reversed limits flip the sign")
    {
        const auto f = [](double x) { return std::cos(x); };
        CHECK(integrate(f, 1.0, 0.0).value == doctest::Approx(-std::sin(1.0)).epsilon(1e-13));
        CHECK(integrate(f, 0.5, 0.5).value == 0.0);
    }

    TEST_CASE("budget exhaustion raises a convergence error")
    {
        CHECK_THROWS_AS(integrate([](double x) { return std::sin(1.0 / x); }, 1e-6, 1.0, 1e-15, 0.0, 8),
                        ConvergenceError);
    }
}
