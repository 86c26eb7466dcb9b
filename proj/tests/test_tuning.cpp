#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace ihs;

TEST_CASE("rates_from_bounds") {
    SUBCASE("exact preconditioning") {
        TuningParams tp = rates_from_bounds(1.0, 1.0);
        CHECK(tp.mu_gd == doctest::Approx(1.0));
        CHECK(tp.c_gd == doctest::Approx(0.0));
        CHECK(tp.mu_p == doctest::Approx(1.0));
        CHECK(tp.beta_p == doctest::Approx(0.0));
        CHECK(tp.c_p == doctest::Approx(0.0));
    }
    SUBCASE("hand values") {
        TuningParams tp = rates_from_bounds(0.5, 2.0);
        CHECK(tp.mu_gd == doctest::Approx(0.8).epsilon(1e-14));
        CHECK(tp.c_gd == doctest::Approx(0.36).epsilon(1e-14));
    }
    SUBCASE("rate ordering and momentum identity") {
        for (double lam : {0.2, 0.5, 0.9}) {
            TuningParams tp = rates_from_bounds(lam, 1.7);
            CHECK(tp.c_p <= tp.c_gd);
            CHECK(tp.c_gd < 1.0);
            CHECK(tp.beta_p == tp.c_p);
        }
    }
    SUBCASE("invalid bounds") {
        CHECK_THROWS_AS(rates_from_bounds(0.0, 1.0), InvalidInput);
        CHECK_THROWS_AS(rates_from_bounds(2.0, 1.0), InvalidInput);
    }
}

TEST_CASE("gaussian_targets") {
    SUBCASE("c_eta at the boundary") {
        // eta = 0.01 -> c_eta = 1.3^2; probe through the bounds at tiny rho
        auto [lam, Lam] = gaussian_targets(1e-8, 0.01);
        const double s = std::sqrt(1.69e-8);
        CHECK(lam == doctest::Approx((1 - s) * (1 - s)).epsilon(1e-12));
        CHECK(Lam == doctest::Approx((1 + s) * (1 + s)).epsilon(1e-12));
    }
    SUBCASE("hand values at rho = 0.1") {
        auto [lam, Lam] = gaussian_targets(0.1, 0.01);
        CHECK(lam == doctest::Approx(0.34681).epsilon(1e-4));
        CHECK(Lam == doctest::Approx(1.99119).epsilon(1e-4));
    }
    SUBCASE("limits") {
        auto [lam, Lam] = gaussian_targets(1e-14, 0.01);
        CHECK(lam == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(Lam == doctest::Approx(1.0).epsilon(1e-6));
    }
    SUBCASE("validity region") {
        CHECK_THROWS_AS(gaussian_targets(0.19, 0.01), OutOfValidityRange);
        CHECK_THROWS_AS(gaussian_targets(0.1, 0.02), OutOfValidityRange);
        CHECK_NOTHROW(gaussian_targets(0.19, 0.01, false));
        CHECK_THROWS_AS(gaussian_targets(-0.1, 0.01), InvalidInput);
    }
}

TEST_CASE("srht_targets") {
    auto [lam, Lam] = srht_targets(0.04);
    CHECK(lam == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(Lam == doctest::Approx(1.2).epsilon(1e-14));
    auto [l2, L2] = srht_targets(1e-14);
    CHECK(l2 == doctest::Approx(1.0));
    CHECK(L2 == doctest::Approx(1.0));
    CHECK_THROWS_AS(srht_targets(0.0), InvalidInput);
    CHECK_THROWS_AS(srht_targets(1.0), InvalidInput);

    SUBCASE("composition gives c_gd = rho exactly") {
        for (double rho = 0.01; rho < 1.0; rho += 0.01) {
            auto [l, L] = srht_targets(rho);
            CHECK(std::abs(rates_from_bounds(l, L).c_gd - rho) <= 1e-14);
        }
    }
}

TEST_CASE("srht_oversampling") {
    CHECK(srht_oversampling(1024, 64) == doctest::Approx(25.29).epsilon(2e-3));
    CHECK(srht_oversampling(1, 1) == doctest::Approx(16.0 / 3.0).epsilon(1e-14));
    CHECK(srht_oversampling(1024, 1e12) == doctest::Approx(16.0 / 3.0).epsilon(1e-4));
    CHECK_THROWS_AS(srht_oversampling(0.0, 4.0), InvalidInput);
}

TEST_CASE("gaussian_theorem_bounds") {
    SUBCASE("collapses to the practical parameters as ||D||^2 -> 1") {
        auto [tl, tu] = gaussian_theorem_bounds(0.1, 0.01, 1.0 - 1e-12);
        auto [pl, pu] = gaussian_targets(0.1, 0.01);
        CHECK(tl == doctest::Approx(pl).epsilon(1e-9));
        CHECK(tu == doctest::Approx(pu).epsilon(1e-9));
    }
    SUBCASE("degenerates to (1,1) as ||D||^2 -> 0") {
        auto [tl, tu] = gaussian_theorem_bounds(0.1, 0.01, 0.0);
        CHECK(tl == doctest::Approx(1.0));
        CHECK(tu == doctest::Approx(1.0));
    }
    SUBCASE("hand values at ||D||^2 = 0.5") {
        auto [tl, tu] = gaussian_theorem_bounds(0.1, 0.01, 0.5);
        CHECK(tl == doctest::Approx(0.67340).epsilon(1e-4));
        CHECK(tu == doctest::Approx(1.49560).epsilon(1e-4));
    }
    CHECK_THROWS_AS(gaussian_theorem_bounds(0.5, 0.01, 0.5), OutOfValidityRange);
}

TEST_CASE("srht_theorem_bounds") {
    auto [l, u] = srht_theorem_bounds(0.25, 1.0);
    CHECK(l == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(u == doctest::Approx(1.5).epsilon(1e-14));
    auto [l0, u0] = srht_theorem_bounds(0.25, 0.0);
    CHECK(l0 == doctest::Approx(1.0));
    CHECK(u0 == doctest::Approx(1.0));
    auto [ls, us] = srht_theorem_bounds(1e-14, 0.7);
    CHECK(ls == doctest::Approx(1.0));
    CHECK(us == doctest::Approx(1.0));
}

TEST_CASE("aspect_factor_a") {
    CHECK(aspect_factor_a(0.25) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(aspect_factor_a(1e-14) == doctest::Approx(1.0));
    SUBCASE("c_gd(rho/a) = c_gd(rho)/a for SRHT targets") {
        for (double rho : {0.04, 0.25, 0.5, 0.81}) {
            const double a = aspect_factor_a(rho);
            auto [l, L] = srht_targets(rho / a);
            CHECK(rates_from_bounds(l, L).c_gd == doctest::Approx(rho / a).epsilon(1e-13));
        }
    }
}

TEST_CASE("gaussian factor-5 relation over a grid") {
    // On the rho/5 event, the eigenvalue spread times the faster rate stays
    // below the rho-level target rate.
    for (double rho = 0.01; rho <= 0.18; rho += 0.01) {
        for (double eta : {0.001, 0.005, 0.01}) {
            auto [l5, L5] = gaussian_targets(rho / 5.0, eta);
            auto [l, L] = gaussian_targets(rho, eta);
            const double lhs = (L5 / l5) * rates_from_bounds(l5, L5).c_gd;
            CHECK(lhs <= rates_from_bounds(l, L).c_gd + 1e-15);
        }
    }
}

TEST_CASE("srht aspect relation over a grid") {
    for (double rho = 0.02; rho < 1.0; rho += 0.02) {
        const double a = aspect_factor_a(rho);
        auto [l, L] = srht_targets(rho / a);
        CHECK(L / l <= a + 1e-12);
    }
}

TEST_CASE("rates increase in rho") {
    double prev_gd = -1.0, prev_p = -1.0;
    for (double rho = 0.01; rho <= 0.18; rho += 0.01) {
        auto [l, L] = gaussian_targets(rho, 0.01);
        TuningParams tp = rates_from_bounds(l, L);
        CHECK(tp.c_gd > prev_gd);
        CHECK(tp.c_p > prev_p);
        prev_gd = tp.c_gd;
        prev_p = tp.c_p;
    }
    prev_gd = prev_p = -1.0;
    for (double rho = 0.05; rho < 1.0; rho += 0.05) {
        auto [l, L] = srht_targets(rho);
        TuningParams tp = rates_from_bounds(l, L);
        CHECK(tp.c_gd > prev_gd);
        CHECK(tp.c_p > prev_p);
        prev_gd = tp.c_gd;
        prev_p = tp.c_p;
    }
}

TEST_CASE("predicted_iterations") {
    CHECK(predicted_iterations(0.1, 1e-10, 3.0, 1.0) == 12);
    CHECK(predicted_iterations(0.5, 0.5, 1.0, 1.0) == 3);
    CHECK(predicted_iterations(1e-9, 0.9, 1.0, 1e3) == 1);
    CHECK_THROWS_AS(predicted_iterations(1.5, 0.5, 1.0, 1.0), InvalidInput);
    CHECK_THROWS_AS(predicted_iterations(0.5, 1.5, 1.0, 1.0), InvalidInput);
}
