#include "support.hpp"

#include <doctest.h>

using namespace ihs;
using test_support::random_matrix;
using test_support::random_vector;
using test_support::rng;

TEST_CASE("solve_underdetermined hand example") {
    Matrix A(1, 2);
    A << 1.0, 1.0;
    ProblemInstance p(A, Vector{{2.0}}, 1.0, Orientation::Underdetermined);
    SolverConfig cfg;
    cfg.eps = 1e-14;
    SolveReport rep = solve_underdetermined(p, cfg);
    CHECK(rep.converged);
    CHECK(rep.x(0) == doctest::Approx(2.0 / 3.0).epsilon(1e-8));
    CHECK(rep.x(1) == doctest::Approx(2.0 / 3.0).epsilon(1e-8));
    CHECK(rep.dual_final.size() == 1);
    CHECK(rep.dual_final(0) == doctest::Approx(2.0 / 3.0).epsilon(1e-8));
}

TEST_CASE("solve_underdetermined zero observations") {
    auto gen = rng(61);
    ProblemInstance p(random_matrix(4, 12, gen), Vector::Zero(4), 0.5,
                      Orientation::Underdetermined);
    SolveReport rep = solve_underdetermined(p, SolverConfig{});
    CHECK(rep.converged);
    CHECK(rep.x.norm() == doctest::Approx(0.0));
}

TEST_CASE("solve_underdetermined matches the kernel-form oracle") {
    auto gen = rng(62);
    Matrix A = random_matrix(16, 64, gen);
    Vector b = random_vector(16, gen);
    ProblemInstance p(A, b, 0.8, Orientation::Underdetermined);
    Vector x_ref = test_support::ridge_kernel_form(A, b, 0.8);

    SUBCASE("gaussian sketches") {
        SolverConfig cfg;
        cfg.eps = 1e-18;
        cfg.sketch_kind = SketchKind::Gaussian;
        SolveReport rep = solve_underdetermined(p, cfg);
        CHECK(rep.converged);
        CHECK((rep.x - x_ref).norm() <= 1e-8 * (1.0 + x_ref.norm()));
    }
    SUBCASE("srht sketches pad the feature dimension") {
        SolverConfig cfg;
        cfg.eps = 1e-18;
        cfg.sketch_kind = SketchKind::SRHT;
        cfg.rho = 0.25;
        SolveReport rep = solve_underdetermined(p, cfg);
        CHECK(rep.converged);
        CHECK(rep.final_m <= next_pow2(64));
        CHECK((rep.x - x_ref).norm() <= 1e-8 * (1.0 + x_ref.norm()));
    }
}

TEST_CASE("solve_underdetermined primal transfer bound (loose)") {
    auto gen = rng(63);
    Matrix A = random_matrix(12, 48, gen);
    Vector b = random_vector(12, gen);
    const double nu = 0.9;
    ProblemInstance p(A, b, nu, Orientation::Underdetermined);
    Vector x_ref = test_support::ridge_kernel_form(A, b, nu);

    SolverConfig cfg;
    cfg.eps = 1e-12;
    cfg.sketch_kind = SketchKind::SRHT; // n_pad cap keeps tiny duals solvable
    cfg.rho = 0.25;
    SolveReport rep = solve_underdetermined(p, cfg);
    CHECK(rep.converged);

    const double sigma1 = Eigen::JacobiSVD<Matrix>(A).singularValues()(0);
    const double f_star = 0.5 * (A * x_ref - b).squaredNorm() + 0.5 * nu * nu * x_ref.squaredNorm();
    const double bound =
        10.0 * std::sqrt(2.0 * cfg.eps * f_star) * sigma1 / (nu * nu);
    CHECK((rep.x - x_ref).norm() / (1.0 + x_ref.norm()) <= bound);
}

TEST_CASE("solve_underdetermined rejects overdetermined input") {
    auto gen = rng(64);
    ProblemInstance p(random_matrix(8, 3, gen), random_vector(8, gen), 1.0,
                      Orientation::Overdetermined);
    CHECK_THROWS_AS(solve_underdetermined(p, SolverConfig{}), InvalidInput);
}
