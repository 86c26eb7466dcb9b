#pragma once

// Shared helpers for the test suites. The solve oracles here are kept
// independent of the library's own solution paths: the ridge oracle uses a
// normal-equations LDLT (the library uses a stacked QR), and the
// underdetermined oracle uses the kernel form directly.

#include <ihs/ihs.hpp>

#include <random>

namespace test_support {

using ihs::Index;
using ihs::Matrix;
using ihs::Vector;

/// Normal-equations ridge oracle: (A^T A + nu^2 I) x = A^T b via LDLT.
inline Vector ridge_normal_equations(const Matrix& A, const Vector& b, double nu) {
    Matrix H = A.transpose() * A;
    H.diagonal().array() += nu * nu;
    return H.ldlt().solve(A.transpose() * b);
}

/// Kernel-form ridge oracle for d >= n: x = A^T (A A^T + nu^2 I)^{-1} b.
inline Vector ridge_kernel_form(const Matrix& A, const Vector& b, double nu) {
    Matrix K = A * A.transpose();
    K.diagonal().array() += nu * nu;
    return A.transpose() * K.ldlt().solve(b);
}

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline Matrix random_matrix(Index rows, Index cols, std::mt19937_64& gen) {
    std::normal_distribution<double> dist;
    Matrix M(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) M(i, j) = dist(gen);
    return M;
}

inline Vector random_vector(Index n, std::mt19937_64& gen) {
    std::normal_distribution<double> dist;
    Vector v(n);
    for (Index i = 0; i < n; ++i) v(i) = dist(gen);
    return v;
}

/// Materializes the sketch matrix itself by applying the config to I_n.
inline Matrix sketch_matrix(Index n, const ihs::SketchConfig& cfg) {
    return ihs::apply_sketch(Matrix::Identity(n, n), cfg);
}

/// Eigenvalues of Ubar^T Sbar^T Sbar Ubar for the stacked embedding
/// Sbar = blockdiag(S, I_d); equals the spectrum of C_S.
inline Vector stacked_embedding_eigs(const ihs::SpectralOracle& oracle, const Matrix& S) {
    const Index n = oracle.rows(), d = oracle.cols();
    Matrix ubar = oracle.ubar();
    Matrix sbar_ubar(S.rows() + d, d);
    sbar_ubar.topRows(S.rows()) = S * ubar.topRows(n);
    sbar_ubar.bottomRows(d) = ubar.bottomRows(d);
    Matrix M = sbar_ubar.transpose() * sbar_ubar;
    Eigen::SelfAdjointEigenSolver<Matrix> es(M, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

/// 1/2 || C_S^{-1/2} Ubar^T Abar (x - x*) ||^2, the oracle route to the
/// sketched Newton decrement.
inline double decrement_via_oracle(const ihs::SpectralOracle& oracle, const Matrix& C_S,
                                   const Vector& x) {
    Vector e = oracle.error_coordinates(x);
    return 0.5 * e.dot(C_S.llt().solve(e));
}

} // namespace test_support
