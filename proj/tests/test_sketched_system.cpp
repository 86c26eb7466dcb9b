#include "support.hpp"

#include <doctest.h>

using namespace ihs;
using test_support::random_matrix;
using test_support::random_vector;
using test_support::rng;

namespace {

// Brute-force reference: assemble H_S densely and invert through LDLT.
Vector gram_oracle_solve(const Matrix& SA, double nu, const Vector& g) {
    Matrix H = SA.transpose() * SA;
    H.diagonal().array() += nu * nu;
    return H.ldlt().solve(g);
}

} // namespace

TEST_CASE("factorize and solve") {
    SUBCASE("zero sketch reduces to nu^-2 scaling") {
        auto sys = SketchedSystem::factorize(Matrix::Zero(3, 4), 2.0);
        Vector g = Vector{{4.0, -8.0, 0.0, 2.0}};
        CHECK((sys.solve(g) - g / 4.0).cwiseAbs().maxCoeff() <= 1e-14);
    }
    SUBCASE("hand-inverted diagonal case") {
        Matrix SA(1, 3);
        SA << 1.0, 0.0, 0.0;
        auto sys = SketchedSystem::factorize(SA, 1.0);
        CHECK(sys.kind() == FactorKind::WoodburyInner);
        Vector z = sys.solve(Vector::Ones(3));
        CHECK(z(0) == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(z(1) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(z(2) == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("g = 0 maps to 0") {
        auto gen = rng(12);
        auto sys = SketchedSystem::factorize(random_matrix(4, 6, gen), 0.5);
        CHECK(sys.solve(Vector::Zero(6)).norm() == doctest::Approx(0.0));
    }
    SUBCASE("Woodbury branch matches the brute-force Gram inversion") {
        auto gen = rng(13);
        Matrix SA = random_matrix(4, 6, gen);
        auto sys = SketchedSystem::factorize(SA, 0.7);
        CHECK(sys.kind() == FactorKind::WoodburyInner);
        Vector g = random_vector(6, gen);
        Vector z = sys.solve(g);
        Vector z_ref = gram_oracle_solve(SA, 0.7, g);
        CHECK((z - z_ref).norm() <= 1e-10 * z_ref.norm());
    }
    SUBCASE("direct branch matches the brute-force Gram inversion") {
        auto gen = rng(14);
        Matrix SA = random_matrix(9, 5, gen);
        auto sys = SketchedSystem::factorize(SA, 0.7);
        CHECK(sys.kind() == FactorKind::DirectGram);
        Vector g = random_vector(5, gen);
        CHECK((sys.solve(g) - gram_oracle_solve(SA, 0.7, g)).norm() <= 1e-10);
    }
    SUBCASE("branch selection is exactly m < d") {
        auto gen = rng(15);
        CHECK(SketchedSystem::factorize(random_matrix(5, 5, gen), 1.0).kind() ==
              FactorKind::DirectGram);
        CHECK(SketchedSystem::factorize(random_matrix(4, 5, gen), 1.0).kind() ==
              FactorKind::WoodburyInner);
    }
    SUBCASE("residual contract on both branches") {
        auto gen = rng(16);
        for (auto [m, d] : {std::pair<Index, Index>{6, 20}, {20, 6}, {8, 8}}) {
            Matrix SA = random_matrix(m, d, gen);
            auto sys = SketchedSystem::factorize(SA, 0.3);
            Vector g = random_vector(d, gen);
            Vector z = sys.solve(g);
            Matrix H = SA.transpose() * SA + 0.09 * Matrix::Identity(d, d);
            CHECK((H * z - g).norm() <= 1e-8 * g.norm());
        }
    }
    SUBCASE("non-finite input is rejected") {
        Matrix SA = Matrix::Zero(2, 3);
        SA(1, 1) = std::numeric_limits<double>::infinity();
        CHECK_THROWS_AS(SketchedSystem::factorize(SA, 1.0), InvalidInput);
        CHECK_THROWS_AS(SketchedSystem::factorize(Matrix::Zero(2, 3), 0.0), InvalidInput);
    }
}

TEST_CASE("newton_decrement") {
    SUBCASE("zero gradient") {
        CHECK(newton_decrement(Vector::Zero(3), Vector::Zero(3)) == doctest::Approx(0.0));
    }
    SUBCASE("matches the true error under an exact sketch") {
        auto gen = rng(18);
        Matrix A = random_matrix(14, 5, gen);
        Vector b = random_vector(14, gen);
        ProblemInstance p(A, b, 0.4, Orientation::Overdetermined);
        SpectralOracle oracle(p);
        auto sys = SketchedSystem::factorize(orthogonal_sketch(A, 9), 0.4);
        Vector x = random_vector(5, gen);
        Vector g = gradient(p, x);
        const double r = newton_decrement(g, sys.solve(g));
        const double delta = prediction_error(p, x, oracle.x_star());
        CHECK(r == doctest::Approx(delta).epsilon(1e-10));
    }
    SUBCASE("matches the C_S^{ -1/2} oracle route") {
        auto gen = rng(19);
        Matrix A = random_matrix(18, 6, gen);
        Vector b = random_vector(18, gen);
        ProblemInstance p(A, b, 0.9, Orientation::Overdetermined);
        SpectralOracle oracle(p);
        SketchConfig cfg{SketchKind::Gaussian, 4, 1234};
        auto sys = SketchedSystem::factorize(apply_sketch(A, cfg), 0.9);
        Matrix C = build_cs(oracle, apply_sketch(oracle.U(), cfg));
        Vector x = random_vector(6, gen);
        Vector g = gradient(p, x);
        const double r = newton_decrement(g, sys.solve(g));
        const double r_oracle = test_support::decrement_via_oracle(oracle, C, x);
        CHECK(r == doctest::Approx(r_oracle).epsilon(1e-9));
    }
    SUBCASE("sandwich bounds with oracle eigenvalues") {
        auto gen = rng(20);
        Matrix A = random_matrix(24, 6, gen);
        Vector b = random_vector(24, gen);
        ProblemInstance p(A, b, 0.5, Orientation::Overdetermined);
        SpectralOracle oracle(p);
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            SketchConfig cfg{SketchKind::Gaussian, 5, seed};
            auto sys = SketchedSystem::factorize(apply_sketch(A, cfg), 0.5);
            auto [gd, g1] = extreme_eigs(oracle, apply_sketch(oracle.U(), cfg));
            Vector x = random_vector(6, gen);
            Vector g = gradient(p, x);
            const double r = newton_decrement(g, sys.solve(g));
            const double delta = prediction_error(p, x, oracle.x_star());
            CHECK(r <= delta / gd * (1.0 + 1e-9));
            CHECK(r >= delta / g1 * (1.0 - 1e-9));
        }
    }
    SUBCASE("flags corrupted factorizations") {
        Vector g = Vector::Ones(3);
        CHECK_THROWS_AS(newton_decrement(g, (-g).eval()), NumericalBreakdown);
    }
}

TEST_CASE("solve cost accounting") {
    auto gen = rng(23);
    Matrix SA = random_matrix(8, 32, gen);
    CostCounters c;
    auto sys = SketchedSystem::factorize(SA, 1.0, &c);
    CHECK(c.factor == 8u * 8u * 32u + 8u * 8u * 8u / 3u);
    sys.solve(Vector::Zero(32), &c);
    CHECK(c.solve == 2u * 8u * 32u + 8u * 8u + 2u * 32u);
}
