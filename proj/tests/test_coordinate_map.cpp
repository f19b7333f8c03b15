#include <doctest.h>

#include "bertrand/coordinate_map.hpp"
#include "bertrand/errors.hpp"

#include <cmath>
#include <random>

using namespace bertrand;

TEST_CASE("type I closed-form pair") {
    auto flat = make_map(make_profile(BertrandFamily::type_one(1, 1, 0.0)));
    CHECK(flat->rho_of_r(2.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(flat->r_of_rho(1.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(flat->kind() == CoordinateMap::Kind::ClosedForm);

    // kappa != 0 reproduces the Poincare chart r = 2 rho / (1 + kappa rho^2)
    const double kappa = 0.3;
    auto curved = make_map(make_profile(BertrandFamily::type_one(1, 1, -kappa)));
    for (double rho : {0.2, 0.6, 1.1}) {
        CHECK(curved->r_of_rho(rho) ==
              doctest::Approx(2.0 * rho / (1.0 + kappa * rho * rho)).epsilon(1e-14));
    }
}

TEST_CASE("type I roundtrip on log-spaced radii") {
    auto map = make_map(make_profile(BertrandFamily::type_one(3, 2, 0.1)));
    for (int i = 0; i < 100; ++i) {
        const double r = std::pow(10.0, -2.0 + 4.0 * i / 99.0);
        const double back = map->r_of_rho(map->rho_of_r(r));
        CHECK(back == doctest::Approx(r).epsilon(1e-10));
    }
}

TEST_CASE("type II quadrature map against the closed charts") {
    SUBCASE("constant curvature, after dropping the ln 2 constant") {
        const double kappa = 0.4;
        auto prof = make_profile(BertrandFamily::type_two(2, 1, 0.0, kappa));
        auto qmap = make_type_two_quadrature_map(prof);
        CHECK(qmap->kind() == CoordinateMap::Kind::Quadrature);
        for (double r : {0.1, 0.5, 1.0, 1.4}) {
            const double expected = r / (1.0 + std::sqrt(1.0 - kappa * r * r));
            CHECK(0.5 * qmap->rho_of_r(r) == doctest::Approx(expected).epsilon(1e-9));
        }
    }
    SUBCASE("Darboux chart") {
        auto qmap = make_type_two_quadrature_map(darboux_profile(1.0));
        for (double r : {0.2, 1.0, 3.0, 8.0}) {
            const double expected = std::sqrt((std::sqrt(1.0 + 4.0 * r * r) - 1.0) / 2.0);
            CHECK(qmap->rho_of_r(r) == doctest::Approx(expected).epsilon(1e-9));
        }
    }
    SUBCASE("flat limit is the identity") {
        auto qmap = make_type_two_quadrature_map(darboux_profile(0.0));
        for (double r : {0.3, 1.0, 5.0})
            CHECK(qmap->rho_of_r(r) == doctest::Approx(r).epsilon(1e-12));
    }
}

TEST_CASE("defining relations hold on every preset map") {
    std::vector<std::unique_ptr<CoordinateMap>> maps;
    maps.push_back(make_map(make_profile(BertrandFamily::type_one(1, 1, 0.0))));
    maps.push_back(make_map(make_profile(BertrandFamily::type_one(1, 1, -0.3))));
    maps.push_back(make_map(make_profile(BertrandFamily::type_one(2, 1, 0.2))));
    maps.push_back(make_map(make_profile(BertrandFamily::type_two(2, 1, 0.0, 0.3))));
    maps.push_back(make_map(darboux_profile(1.0)));
    maps.push_back(make_map(darboux_profile(-0.25)));

    for (const auto& map : maps) {
        const auto& dom = map->r_domain();
        const double hi = std::isinf(dom.hi) ? 3.0 : dom.hi * 0.92;
        const double lo = std::max(dom.lo, 0.05 * hi);
        double worst = 0.0;
        for (int i = 0; i <= 50; ++i) {
            const double r = lo + (hi - lo) * i / 50.0;
            if (!dom.contains(r))
                continue;
            const auto res = check_relations(*map, r);
            worst = std::max({worst, res.roundtrip, res.conformal, res.logarithmic});
        }
        CHECK(worst <= 1e-7);
    }
}

TEST_CASE("relations at a Darboux point with closed forms on both sides") {
    auto map = make_map(darboux_profile(1.0));
    const auto res = check_relations(*map, 1.0);
    CHECK(res.roundtrip <= 1e-8);
    CHECK(res.conformal <= 1e-8);
    CHECK(res.logarithmic <= 1e-8);

    auto flat = make_map(darboux_profile(0.0));
    const auto res0 = check_relations(*flat, 1.0);
    CHECK(res0.roundtrip <= 1e-14);
    CHECK(res0.logarithmic <= 1e-12);
}

TEST_CASE("inverse pair property on random admissible families") {
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> upar(-0.4, 0.4);
    const std::pair<int, int> nm[] = {{1, 1}, {2, 1}, {1, 2}, {3, 2}};
    int tested = 0;
    for (int draw = 0; draw < 40 && tested < 20; ++draw) {
        const auto [n, m] = nm[draw % 4];
        try {
            std::unique_ptr<CoordinateMap> map;
            if (draw % 2) {
                map = make_type_two_quadrature_map(
                    make_profile(BertrandFamily::type_two(n, m, upar(rng), upar(rng))));
            } else {
                map = make_map(make_profile(BertrandFamily::type_one(n, m, upar(rng))));
            }
            const auto& dom = map->r_domain();
            const double hi = std::isinf(dom.hi) ? 2.5 : dom.hi * 0.9;
            for (double frac : {0.15, 0.5, 0.85}) {
                const double r = std::max(dom.lo * 1.01, frac * hi);
                if (!dom.contains(r))
                    continue;
                const double back = map->r_of_rho(map->rho_of_r(r));
                CHECK(back == doctest::Approx(r).epsilon(1e-10));
            }
            ++tested;
        } catch (const DomainError&) {
        }
    }
    CHECK(tested >= 20);
}

TEST_CASE("map domain errors") {
    auto bounded = make_map(make_profile(BertrandFamily::type_one(1, 1, -1.0)));
    CHECK_THROWS_AS(bounded->rho_of_r(1.5), DomainError);
    CHECK_THROWS_AS(bounded->r_of_rho(5.0), DomainError);
}
