#include <doctest.h>

#include "bertrand/errors.hpp"
#include "bertrand/numerics.hpp"

#include <cmath>

using namespace bertrand;

TEST_CASE("quadrature reproduces elementary integrals") {
    CHECK(integrate([](double x) { return x * x; }, 0.0, 1.0) == doctest::Approx(1.0 / 3).epsilon(1e-14));
    CHECK(integrate([](double x) { return std::sin(x); }, 0.0, M_PI) ==
          doctest::Approx(2.0).epsilon(1e-13));
    // reversed limits flip the sign
    CHECK(integrate([](double x) { return std::sin(x); }, M_PI, 0.0) ==
          doctest::Approx(-2.0).epsilon(1e-13));
}

TEST_CASE("quadrature handles integrable endpoint singularities") {
    QuadratureOptions opt;
    opt.abs_tol = 1e-10;
    const double v = integrate([](double x) { return 1.0 / std::sqrt(x); }, 1e-300, 1.0, opt);
    CHECK(v == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("quadrature over a half-line") {
    CHECK(integrate_to_infinity([](double x) { return 1.0 / (x * x); }, 1.0) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(integrate_to_infinity([](double x) { return std::exp(-x); }, 0.0) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("brent refines a bracketed root") {
    const double root = brent([](double x) { return std::cos(x); }, 1.0, 2.0);
    CHECK(root == doctest::Approx(M_PI / 2).epsilon(1e-14));
    CHECK_THROWS_AS(brent([](double x) { return 1.0 + x * x; }, -1.0, 1.0), Error);
}

TEST_CASE("bracket scan finds every sign change") {
    const auto brackets =
        sign_change_brackets([](double x) { return std::sin(x); }, 0.1, 10.0, 500, false);
    REQUIRE(brackets.size() == 3);
    CHECK(brent([](double x) { return std::sin(x); }, brackets[0].first, brackets[0].second) ==
          doctest::Approx(M_PI).epsilon(1e-12));
    CHECK(brent([](double x) { return std::sin(x); }, brackets[2].first, brackets[2].second) ==
          doctest::Approx(3 * M_PI).epsilon(1e-12));
}

TEST_CASE("central differences are fourth order") {
    const double d = deriv_central([](double x) { return std::sin(x); }, 1.0, 1e-3);
    CHECK(d == doctest::Approx(std::cos(1.0)).epsilon(1e-12));
}
