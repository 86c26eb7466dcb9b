#pragma once

#include "ihs/problem.hpp"
#include "ihs/types.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>

namespace ihs {

/// SVD-derived quantities for tests and the concentration lab: the thin SVD
/// A = U diag(sigma) V^T, the diagonals D, D' of the stacked factorization
/// Abar = Ubar Sigmabar V^T with Ubar = [U D; V D'], the effective dimension,
/// and the exact minimizer. Everything is computed once at construction and
/// immutable afterwards. Diagnostic-only: the solvers never touch this class.
class SpectralOracle {
public:
    explicit SpectralOracle(const ProblemInstance& p)
        : n_(p.rows()), d_(p.cols()), nu_(p.nu()) {
        if (p.orientation() != Orientation::Overdetermined)
            throw InvalidInput("SpectralOracle: requires an overdetermined instance (dualize first)");

        Eigen::JacobiSVD<Matrix> svd(p.A(), Eigen::ComputeThinU | Eigen::ComputeThinV);
        sigma_ = svd.singularValues();
        U_ = svd.matrixU();
        V_ = svd.matrixV();
        if (sigma_(d_ - 1) < 1e-12 * sigma_(0))
            throw InvalidInput("SpectralOracle: A is numerically rank-deficient");

        Dvec_.resize(d_);
        Dprime_.resize(d_);
        sigma_bar_.resize(d_);
        for (Index i = 0; i < d_; ++i) {
            const double s2 = sigma_(i) * sigma_(i);
            sigma_bar_(i) = std::sqrt(s2 + nu_ * nu_);
            Dvec_(i) = sigma_(i) / sigma_bar_(i);
            Dprime_(i) = nu_ / sigma_bar_(i);
        }
        d_eff_ = effective_dimension(sigma_, nu_);

        // x* = V diag(sigma_i/(sigma_i^2+nu^2)) U^T b
        Vector utb = U_.transpose() * p.b();
        for (Index i = 0; i < d_; ++i) utb(i) *= sigma_(i) / (sigma_bar_(i) * sigma_bar_(i));
        x_star_ = V_ * utb;
    }

    Index rows() const noexcept { return n_; }
    Index cols() const noexcept { return d_; }
    double nu() const noexcept { return nu_; }
    const Vector& sigma() const noexcept { return sigma_; }
    const Matrix& U() const noexcept { return U_; }
    const Matrix& V() const noexcept { return V_; }
    const Vector& Dvec() const noexcept { return Dvec_; }
    const Vector& Dprime() const noexcept { return Dprime_; }
    const Vector& sigma_bar() const noexcept { return sigma_bar_; }
    const Vector& x_star() const noexcept { return x_star_; }

    /// ||D||_F^2 / ||D||_2^2, the form used by every theorem here.
    double d_eff() const noexcept { return d_eff_; }
    /// ||D||_F^2 = trace(A (A^T A + nu^2 I)^{-1} A^T), the alternative
    /// definition floating around; exposed for diagnostics only.
    double d_eff_trace() const noexcept { return Dvec_.squaredNorm(); }
    double Dnorm2() const noexcept { return Dvec_(0) * Dvec_(0); }

    /// Left singular factor of the stacked matrix: Ubar = [U D; V D'].
    Matrix ubar() const {
        Matrix ub(n_ + d_, d_);
        ub.topRows(n_) = U_ * Dvec_.asDiagonal();
        ub.bottomRows(d_) = V_ * Dprime_.asDiagonal();
        return ub;
    }

    /// e = Ubar^T Abar (x - x*), the coordinates in which the IHS error
    /// recursion is diagonal-friendly. Using Abar = Ubar Sigmabar V^T this is
    /// Sigmabar V^T (x - x*).
    Vector error_coordinates(const Vector& x) const {
        return sigma_bar_.asDiagonal() * (V_.transpose() * (x - x_star_));
    }

private:
    Index n_;
    Index d_;
    double nu_;
    Vector sigma_;
    Matrix U_;
    Matrix V_;
    Vector Dvec_;
    Vector Dprime_;
    Vector sigma_bar_;
    Vector x_star_;
    double d_eff_ = 1.0;
};

/// C_S = D (U^T S^T S U - I) D + I from the sketched left factor SU (the
/// same sketch realization applied to U). Symmetric positive definite for
/// every sketch since ||D||_2 < 1.
inline Matrix build_cs(const SpectralOracle& oracle, const Matrix& SU) {
    const Matrix M = SU * oracle.Dvec().asDiagonal();
    Matrix C = M.transpose() * M;
    const Vector& D = oracle.Dvec();
    C -= (D.array() * D.array()).matrix().asDiagonal();
    C += Matrix::Identity(oracle.cols(), oracle.cols());
    return 0.5 * (C + C.transpose());
}

/// Extreme eigenvalues (gamma_d, gamma_1) of C_S via a symmetric eigensolve.
inline std::pair<double, double> extreme_eigs(const SpectralOracle& oracle, const Matrix& SU) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(build_cs(oracle, SU), Eigen::EigenvaluesOnly);
    const Vector& ev = es.eigenvalues();
    return {ev(0), ev(ev.size() - 1)};
}

} // namespace ihs
