#include <doctest.h>

#include "bertrand/errors.hpp"
#include "bertrand/family.hpp"

#include <cmath>
#include <random>

using namespace bertrand;

TEST_CASE("metric profile values") {
    // flat Kepler chart: h = m/n
    auto flat = make_profile(BertrandFamily::type_one(1, 1, 0.0));
    CHECK(flat.h(2.0) == doctest::Approx(1.0).epsilon(1e-15));

    // flat oscillator chart: h^2 = 2 m^2 (1+1) / n^2 = 1 at n=2, m=1
    auto osc = make_profile(BertrandFamily::type_two(2, 1, 0.0, 0.0));
    CHECK(osc.h(1.0) == doctest::Approx(1.0).epsilon(1e-15));

    // Darboux at the origin limit: (1+1)/2
    auto dar = darboux_profile(1.0);
    CHECK(dar.h(1e-12) == doctest::Approx(1.0).epsilon(1e-10));

    // Darboux closed form (1+s)/(2s), s = sqrt(1+4 lambda r^2)
    const double r = std::sqrt(2.0);
    CHECK(dar.h(r) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    for (double rr : {0.2, 0.7, 1.9, 6.0}) {
        const double s = std::sqrt(1.0 + 4.0 * rr * rr);
        CHECK(dar.h(rr) == doctest::Approx((1.0 + s) / (2.0 * s)).epsilon(1e-13));
    }
}

TEST_CASE("classified potentials") {
    auto flat = make_profile(BertrandFamily::type_one(1, 1, 0.0));
    CHECK(flat.potential(2.0) == doctest::Approx(0.5).epsilon(1e-15));

    auto shifted = make_profile(BertrandFamily::type_one(1, 1, 3.0, 1.0));
    CHECK(shifted.potential(1.0) == doctest::Approx(3.0).epsilon(1e-14));

    auto osc = make_profile(BertrandFamily::type_two(2, 1, 0.0, 0.0));
    CHECK(osc.potential(1.0) == doctest::Approx(-0.5).epsilon(1e-15));
}

TEST_CASE("potential derivative matches finite differences") {
    auto dar = darboux_profile(0.7);
    auto minus = make_profile(BertrandFamily::type_two(1, 2, 0.5, 1.0, 0.0, Branch::Minus));
    for (const auto& prof : {dar, minus}) {
        for (double r : {0.4, 0.9, 0.55}) {
            if (!prof.contains(r))
                continue;
            const double h = 1e-5;
            const double fd = (prof.potential(r + h) - prof.potential(r - h)) / (2 * h);
            CHECK(prof.potential_deriv(r) == doctest::Approx(fd).epsilon(1e-7));
        }
    }
}

TEST_CASE("radial Green function") {
    // flat Kepler: int_inf^r dr'/r'^2 = -1/r
    auto flat = make_profile(BertrandFamily::type_one(1, 1, 0.0));
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(flat.green(2.0, inf) == doctest::Approx(-0.5).epsilon(1e-14));

    // Darboux closed form u(r) = -(1+sqrt(1+4 lambda r^2))/(2r)
    auto dar = darboux_profile(1.0);
    CHECK(dar.green_antiderivative(1.0) ==
          doctest::Approx(-(1.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-14));

    // curvature -> 0 approaches -1/r
    auto almost_flat = make_profile(BertrandFamily::type_one(1, 1, -1e-10));
    CHECK(almost_flat.green_antiderivative(1.0) == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("green quadrature agrees with the closed forms to 1e-10") {
    std::vector<RadialProfile> presets;
    presets.push_back(make_profile(BertrandFamily::type_one(1, 1, 0.0)));
    presets.push_back(make_profile(BertrandFamily::type_one(1, 1, -0.3)));
    presets.push_back(make_profile(BertrandFamily::type_one(1, 1, 0.3)));
    presets.push_back(make_profile(BertrandFamily::type_two(2, 1, 0.0, 0.3)));
    presets.push_back(darboux_profile(1.0));
    presets.push_back(darboux_profile(-0.25));
    for (const auto& prof : presets) {
        const double hi = prof.domain().front().hi;
        const double a = std::isinf(hi) ? 0.8 : 0.5 * hi;
        for (double frac : {0.2, 0.55, 0.9}) {
            const double r = std::isinf(hi) ? frac * 2.5 : frac * hi;
            if (!prof.contains(r))
                continue;
            CHECK(std::abs(prof.green_quadrature(r, a) - prof.green(r, a)) <= 1e-10);
        }
    }
}

TEST_CASE("intrinsic potentials on constant curvature spaces") {
    // Euclidean Kepler: A(u + B) with A = -1, B = -u(1) gives exactly 1/r
    auto flat = make_profile(BertrandFamily::type_one(1, 1, 0.0));
    IntrinsicPotentialSpec kepler;
    kepler.kind = IntrinsicPotentialSpec::Kind::Kepler;
    kepler.A = -1.0;
    kepler.B = -1.0;   // u(r) - u(1) + B = -1/r with u = -1/r
    for (double r : {0.5, 1.0, 2.0, 7.0})
        CHECK(intrinsic_potential(flat, kepler, r) == doctest::Approx(1.0 / r).epsilon(1e-13));

    for (double kappa : {0.3, -0.3}) {
        auto prof = make_profile(BertrandFamily::type_one(1, 1, -kappa));
        const double u1 = prof.green_antiderivative(1.0);
        IntrinsicPotentialSpec vk{IntrinsicPotentialSpec::Kind::Kepler, -1.0, u1, 1.0};
        IntrinsicPotentialSpec vo{IntrinsicPotentialSpec::Kind::Oscillator, 1.0, u1, 1.0};
        for (double r : {0.3, 0.8, 1.4}) {
            const double target = 1.0 / (r * r) - kappa;
            CHECK(intrinsic_potential(prof, vk, r) ==
                  doctest::Approx(std::sqrt(target)).epsilon(1e-10));
            CHECK(intrinsic_potential(prof, vo, r) ==
                  doctest::Approx(1.0 / target).epsilon(1e-10));
        }
    }
}

TEST_CASE("oscillator singularity is reported") {
    auto flat = make_profile(BertrandFamily::type_one(1, 1, 0.0));
    // u(r) - u(1) + B vanishes at r = 1 when B = 0
    IntrinsicPotentialSpec spec{IntrinsicPotentialSpec::Kind::Oscillator, 1.0, 0.0, 1.0};
    CHECK_THROWS_AS(intrinsic_potential(flat, spec, 1.0), SingularityError);
}

TEST_CASE("classified potentials are the intrinsic ones (two-point fit)") {
    std::vector<double> grid;
    for (int i = 0; i <= 12; ++i)
        grid.push_back(0.3 + 0.15 * i);

    SUBCASE("flat Kepler") {
        auto prof = make_profile(BertrandFamily::type_one(1, 1, 0.0));
        CHECK(intrinsic_match(prof, grid).max_residual <= 1e-9);
    }
    SUBCASE("constant curvature Kepler") {
        auto prof = make_profile(BertrandFamily::type_one(1, 1, 0.3));   // K = -kappa
        CHECK(intrinsic_match(prof, grid).max_residual <= 1e-9);
    }
    SUBCASE("Darboux oscillator") {
        auto prof = darboux_profile(1.0);
        CHECK(intrinsic_match(prof, grid).max_residual <= 1e-9);
    }
    SUBCASE("parameter grids around the presets") {
        auto domain_grid = [](const RadialProfile& prof) {
            const double hi = prof.domain().front().hi;
            const double top = std::isinf(hi) ? 2.1 : 0.9 * hi;
            std::vector<double> g;
            for (int i = 0; i <= 12; ++i)
                g.push_back(0.3 * top / 2.1 + (top - 0.3 * top / 2.1) * i / 12.0);
            return g;
        };
        for (double K : {-0.2, 0.0, 0.2})
            for (double G : {-0.5, 0.0, 0.5}) {
                auto prof = make_profile(BertrandFamily::type_one(1, 1, K, G));
                CHECK(intrinsic_match(prof, domain_grid(prof)).max_residual <= 1e-9);
            }
        for (double K : {-0.1, 0.0, 0.1})
            for (double D : {-0.15, 0.0, 0.15}) {
                auto prof = make_profile(BertrandFamily::type_two(2, 1, K, D));
                CHECK(intrinsic_match(prof, domain_grid(prof)).max_residual <= 1e-9);
            }
    }
}

TEST_CASE("fit residual against the Darboux closed-form potential") {
    // V(r) = -rho^2 / (2 (1 + lambda rho^2)) with rho the mapped radius;
    // amplitude sign follows the classified (Plus-branch) convention
    auto prof = darboux_profile(0.8);
    for (double r : {0.3, 1.0, 2.4}) {
        const double lam = 0.8;
        const double rho2 = (std::sqrt(1.0 + 4.0 * lam * r * r) - 1.0) / (2.0 * lam);
        const double target = -rho2 / (2.0 * (1.0 + lam * rho2));
        CHECK(prof.potential(r) == doctest::Approx(target).epsilon(1e-12));
    }
}

TEST_CASE("darboux profile domains") {
    auto unbounded = darboux_profile(1.0);
    REQUIRE(unbounded.domain().size() == 1);
    CHECK(std::isinf(unbounded.domain().front().hi));

    auto flat = darboux_profile(0.0);
    CHECK(flat.preset() == ProfilePreset::FlatOscillator);
    for (double r : {0.5, 2.0, 9.0})
        CHECK(flat.h(r) == doctest::Approx(1.0).epsilon(1e-15));

    auto bounded = darboux_profile(-0.25);
    REQUIRE(bounded.domain().size() == 1);
    CHECK(bounded.domain().front().hi == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_THROWS_AS(bounded.h(1.5), DomainError);
}

TEST_CASE("curvature at the origin") {
    CHECK(darboux_curvature_origin(2.0, 3) == doctest::Approx(-24.0));
    CHECK(darboux_curvature_origin(0.0, 5) == 0.0);
    CHECK(darboux_curvature_origin(-2.0, 3) == doctest::Approx(24.0));
}

TEST_CASE("constant curvature profiles from both families") {
    const double kappa = 0.37;
    auto one = make_profile(BertrandFamily::type_one(1, 1, -kappa));
    auto two = make_profile(BertrandFamily::type_two(2, 1, 0.0, kappa));
    for (double r : {0.2, 0.8, 1.3}) {
        const double target = 1.0 / (1.0 - kappa * r * r);
        CHECK(one.h2(r) == doctest::Approx(target).epsilon(1e-12));
        CHECK(two.h2(r) == doctest::Approx(target).epsilon(1e-12));
    }
}

TEST_CASE("family invariants") {
    CHECK_THROWS_AS(BertrandFamily::type_one(2, 4, 0.0), DomainError);
    CHECK_THROWS_AS(BertrandFamily::type_one(0, 1, 0.0), DomainError);
    CHECK_THROWS_AS(BertrandFamily::type_two(2, 1, 0.0, 0.3, 0.0, Branch::Minus), DomainError);
    // Minus branch with K > 0 has a valid region
    auto minus = make_profile(BertrandFamily::type_two(1, 2, 0.5, 1.0, 0.0, Branch::Minus));
    CHECK(!minus.domain().empty());

    CHECK_THROWS_AS(make_profile(BertrandFamily::type_one(1, 1, -1.0)).h(1.5), DomainError);
}

TEST_CASE("h stays positive and finite across random admissible parameters") {
    std::mt19937_64 rng(20240811);
    std::uniform_real_distribution<double> upar(-0.5, 0.5);
    const std::pair<int, int> nm[] = {{1, 1}, {2, 1}, {1, 2}, {3, 2}, {2, 3}};
    int checked = 0;
    for (int draw = 0; draw < 40; ++draw) {
        const auto [n, m] = nm[draw % 5];
        const bool type_two = draw % 2;
        try {
            auto prof = type_two
                            ? make_profile(BertrandFamily::type_two(n, m, upar(rng), upar(rng)))
                            : make_profile(BertrandFamily::type_one(n, m, upar(rng)));
            for (const auto& iv : prof.domain()) {
                const double hi = std::isinf(iv.hi) ? 10.0 : iv.hi;
                for (int i = 1; i < 20; ++i) {
                    const double r = iv.lo + (hi - iv.lo) * i / 20.0;
                    if (!prof.contains(r))
                        continue;
                    const double h2 = prof.h2(r);
                    CHECK(h2 > 0.0);
                    CHECK(std::isfinite(h2));
                    ++checked;
                }
            }
        } catch (const DomainError&) {
            // inadmissible draw (empty validity region)
        }
    }
    CHECK(checked > 200);
}
