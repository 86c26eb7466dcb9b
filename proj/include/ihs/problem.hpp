#pragma once

#include "ihs/errors.hpp"
#include "ihs/types.hpp"

#include <Eigen/QR>

#include <cmath>
#include <utility>

namespace ihs {

enum class Orientation { Overdetermined, Underdetermined };

/// A regularized least-squares instance
///
///     minimize_x  1/2 ||A x - b||^2 + nu^2/2 ||x||^2,   nu > 0.
///
/// Immutable after construction; safe to share across threads read-only.
class ProblemInstance {
public:
    ProblemInstance(Matrix A, Vector b, double nu, Orientation orientation)
        : A_(std::move(A)), b_(std::move(b)), nu_(nu), orientation_(orientation) {
        if (!(nu_ > 0.0)) throw InvalidInput("ProblemInstance: nu must be strictly positive");
        if (A_.rows() < 1 || A_.cols() < 1) throw InvalidInput("ProblemInstance: empty matrix");
        if (b_.size() != A_.rows()) throw InvalidInput("ProblemInstance: size of b must match rows of A");
        if (!A_.allFinite() || !b_.allFinite() || !std::isfinite(nu_))
            throw InvalidInput("ProblemInstance: non-finite input");
        if (orientation_ == Orientation::Overdetermined && A_.rows() < A_.cols())
            throw InvalidInput("ProblemInstance: overdetermined orientation requires n >= d");
        if (orientation_ == Orientation::Underdetermined && A_.cols() < A_.rows())
            throw InvalidInput("ProblemInstance: underdetermined orientation requires d >= n");
    }

    /// Convenience factory that infers the orientation from the shape
    /// (square matrices count as overdetermined).
    static ProblemInstance make(Matrix A, Vector b, double nu) {
        const Orientation o = A.rows() >= A.cols() ? Orientation::Overdetermined
                                                   : Orientation::Underdetermined;
        return ProblemInstance(std::move(A), std::move(b), nu, o);
    }

    const Matrix& A() const noexcept { return A_; }
    const Vector& b() const noexcept { return b_; }
    double nu() const noexcept { return nu_; }
    Orientation orientation() const noexcept { return orientation_; }
    Index rows() const noexcept { return A_.rows(); }
    Index cols() const noexcept { return A_.cols(); }

private:
    Matrix A_;
    Vector b_;
    double nu_;
    Orientation orientation_;
};

/// Gradient of the objective: A^T (A x - b) + nu^2 x, evaluated as two
/// rectangular matrix-vector products, O(n d).
inline Vector gradient(const ProblemInstance& p, const Vector& x, CostCounters* counters = nullptr) {
    if (x.size() != p.cols()) throw InvalidInput("gradient: dimension mismatch");
    Vector r = p.A() * x - p.b();
    Vector g = p.A().transpose() * r + p.nu() * p.nu() * x;
    if (counters) {
        const auto n = static_cast<std::uint64_t>(p.rows());
        const auto d = static_cast<std::uint64_t>(p.cols());
        counters->matvec += 2 * n * d + n + 2 * d;
    }
    return g;
}

/// Exact minimizer via a Householder QR of the stacked matrix [A; nu I].
/// Direct oracle; not intended for the iterative hot path.
inline Vector direct_solve(const ProblemInstance& p) {
    const Index n = p.rows();
    const Index d = p.cols();
    Matrix stacked(n + d, d);
    stacked.topRows(n) = p.A();
    stacked.bottomRows(d) = p.nu() * Matrix::Identity(d, d);
    Vector rhs = Vector::Zero(n + d);
    rhs.head(n) = p.b();
    return stacked.householderQr().solve(rhs);
}

/// Effective dimension  d_e = ||D||_F^2 / ||D||_2^2  with
/// D_i = sigma_i / sqrt(sigma_i^2 + nu^2), i.e.
/// (sum_i sigma_i^2/(sigma_i^2+nu^2)) / max_i sigma_i^2/(sigma_i^2+nu^2).
/// Invariant under uniform scaling of (sigma, nu).
inline double effective_dimension(const Vector& sigma, double nu) {
    if (sigma.size() == 0) throw InvalidInput("effective_dimension: empty spectrum");
    if (!(nu > 0.0)) throw InvalidInput("effective_dimension: nu must be positive");
    double sum = 0.0, maxr = 0.0;
    for (Index i = 0; i < sigma.size(); ++i) {
        if (!(sigma(i) > 0.0)) throw InvalidInput("effective_dimension: sigma must be positive");
        const double r = sigma(i) * sigma(i) / (sigma(i) * sigma(i) + nu * nu);
        sum += r;
        maxr = std::max(maxr, r);
    }
    return sum / maxr;
}

/// Prediction (semi)norm error of an iterate against the minimizer:
///     delta = 1/2 ||A (x - x*)||^2 + nu^2/2 ||x - x*||^2,
/// which equals 1/2 ||Abar (x - x*)||^2 for the stacked Abar = [A; nu I].
inline double prediction_error(const ProblemInstance& p, const Vector& x, const Vector& x_star) {
    if (x.size() != p.cols() || x_star.size() != p.cols())
        throw InvalidInput("prediction_error: dimension mismatch");
    const Vector diff = x - x_star;
    return 0.5 * (p.A() * diff).squaredNorm() + 0.5 * p.nu() * p.nu() * diff.squaredNorm();
}

} // namespace ihs
