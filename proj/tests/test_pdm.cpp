#include <doctest.h>

#include "bertrand/errors.hpp"
#include "bertrand/numerics.hpp"
#include "bertrand/pdm.hpp"

#include <cmath>

using namespace bertrand;

TEST_CASE("mass functions of the presets") {
    auto flat_kepler = type_one_system(3, 1, 1, 0.0, -1.0);
    for (double rho : {0.1, 1.0, 42.0})
        CHECK(mass_of_rho(*flat_kepler, rho) == doctest::Approx(4.0).epsilon(1e-14));

    auto dar = darboux_system(3, 2.0, 1.0);
    CHECK(mass_of_rho(*dar, 1.0) == doctest::Approx(3.0).epsilon(1e-15));

    const double kappa = 0.3;
    auto osc = kappa_oscillator_system(3, kappa, 0.5);
    for (double rho : {0.3, 0.9, 1.5})
        CHECK(mass_of_rho(*osc, rho) ==
              doctest::Approx(4.0 / sq(1.0 + kappa * rho * rho)).epsilon(1e-14));
}

TEST_CASE("mass equals r(rho)^2/rho^2 for the quadrature-backed systems") {
    auto sys = type_two_quadrature_system(3, BertrandFamily::type_two(2, 1, 0.1, -0.2));
    const auto* map = sys->map();
    REQUIRE(map != nullptr);
    for (double rho : {0.3, 0.8, 1.7}) {
        const double r = map->r_of_rho(rho);
        CHECK(std::abs(sys->mass(rho) - r * r / (rho * rho)) <= 1e-10);
    }
}

TEST_CASE("mass * rho^2 = r^2 on the closed-form preset maps") {
    std::vector<SystemPtr> systems = {
        darboux_system(3, 0.8, 1.0),
        type_one_system(3, 2, 1, 0.15, -1.0),
        kappa_oscillator_system(3, -0.4, 0.5),
    };
    for (const auto& sys : systems) {
        const auto* map = sys->map();
        REQUIRE(map != nullptr);
        for (double rho : {0.2, 0.7, 1.3}) {
            if (!sys->in_domain(rho) || !map->rho_domain().contains(rho))
                continue;
            const double r = map->r_of_rho(rho);
            CHECK(sys->mass(rho) * rho * rho == doctest::Approx(r * r).epsilon(1e-10));
        }
    }
}

TEST_CASE("Hamiltonian values") {
    const double q[3] = {1.0, 0.0, 0.0};
    const double p[3] = {0.0, 1.0, 0.0};
    const double zero[3] = {0.0, 0.0, 0.0};

    CHECK(darboux_system(3, 0.0, 1.0)->hamiltonian(q, p) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(darboux_system(3, 1.0, 1.0)->hamiltonian(q, p) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(kappa_kepler_system(3, 0.0, -1.0)->hamiltonian(q, zero) ==
          doctest::Approx(-0.5).epsilon(1e-15));
}

TEST_CASE("interior Darboux domain is the critical ball") {
    auto sys = darboux_system(3, -1.0, 1.0);
    CHECK(sys->rho_domain().hi == doctest::Approx(1.0));
    const double q[3] = {1.2, 0.0, 0.0};
    const double p[3] = {0.0, 0.1, 0.0};
    CHECK_THROWS_AS(sys->hamiltonian(q, p), DomainError);
    CHECK_THROWS_AS(mass_of_rho(*sys, 1.0), DomainError);

    const double qin[3] = {0.5, 0.0, 0.0};
    CHECK(sys->hamiltonian(qin, p) > 0.0);
}

TEST_CASE("exterior Darboux region keeps a positive kinetic term") {
    auto sys = darboux_exterior_system(3, -1.0, 1.0);
    CHECK(sys->rho_domain().lo == doctest::Approx(1.0));
    for (double rho : {1.001, 1.5, 4.0}) {
        CHECK(sys->mass(rho) == doctest::Approx(rho * rho - 1.0).epsilon(1e-14));
        CHECK(sys->mass(rho) > 0.0);
        CHECK(sys->potential(rho) > 0.0);
    }
    // barrier near the critical radius
    CHECK(sys->potential(1.0 + 1e-6) > 1e5);
    CHECK_THROWS_AS(darboux_exterior_system(3, 0.5, 1.0), ConfigError);
}

TEST_CASE("derivatives of mass and potential match finite differences") {
    std::vector<SystemPtr> systems = {
        darboux_system(3, 0.7, 1.3),
        darboux_exterior_system(3, -0.8, 1.0),
        type_one_system(3, 3, 2, 0.2, -1.0),
        kappa_kepler_system(3, 0.25, -1.0),
        kappa_oscillator_system(3, 0.25, 0.5),
    };
    for (const auto& sys : systems) {
        const auto& dom = sys->rho_domain();
        for (double frac : {0.3, 0.6, 0.85}) {
            const double hi = std::isinf(dom.hi) ? 2.0 : dom.hi;
            const double rho = dom.lo + (hi - dom.lo) * frac;
            const double h = 1e-5 * std::max(1.0, rho);
            auto fd = [&](auto&& f) { return (f(rho + h) - f(rho - h)) / (2 * h); };
            auto fd2 = [&](auto&& f) {
                return (f(rho + h) - 2 * f(rho) + f(rho - h)) / (h * h);
            };
            auto M = [&](double x) { return sys->mass(x); };
            auto V = [&](double x) { return sys->potential(x); };
            CHECK(sys->mass_d1(rho) ==
                  doctest::Approx(fd(M)).epsilon(1e-6).scale(std::abs(sys->mass_d1(rho)) + 1));
            CHECK(sys->mass_d2(rho) ==
                  doctest::Approx(fd2(M)).epsilon(1e-4).scale(std::abs(sys->mass_d2(rho)) + 1));
            CHECK(sys->potential_d1(rho) ==
                  doctest::Approx(fd(V)).epsilon(1e-6).scale(std::abs(sys->potential_d1(rho)) + 1));
            CHECK(sys->potential_d2(rho) ==
                  doctest::Approx(fd2(V)).epsilon(1e-4).scale(std::abs(sys->potential_d2(rho)) + 1));
        }
    }
}
