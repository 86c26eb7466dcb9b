#pragma once

#include "ihs/errors.hpp"
#include "ihs/types.hpp"

#include <Eigen/Cholesky>

#include <utility>

namespace ihs {

enum class FactorKind { WoodburyInner, DirectGram };

/// Cached factorization of the sketched Hessian
///     H_S = (SA)^T (SA) + nu^2 I_d,
/// positive definite for every sketch since nu > 0, so a Cholesky suffices
/// and no jitter is ever added. When m < d the Woodbury identity
///     H_S^{-1} = nu^{-2} (I - (SA)^T (nu^2 I_m + SA (SA)^T)^{-1} SA)
/// reduces the factorization to an m x m inner system (cost O(m^2 d + m^3),
/// O(m d) per solve); otherwise the d x d regularized Gram matrix is
/// factored directly. Immutable after construction; concurrent solves are
/// safe.
class SketchedSystem {
public:
    static SketchedSystem factorize(Matrix SA, double nu, CostCounters* counters = nullptr) {
        if (!(nu > 0.0)) throw InvalidInput("SketchedSystem: nu must be positive");
        if (!SA.allFinite()) throw InvalidInput("SketchedSystem: non-finite sketched matrix");
        SketchedSystem sys(std::move(SA), nu);
        if (counters) counters->factor += sys.factor_flops();
        return sys;
    }

    Index m() const noexcept { return SA_.rows(); }
    Index d() const noexcept { return SA_.cols(); }
    double nu() const noexcept { return nu_; }
    FactorKind kind() const noexcept { return kind_; }
    const Matrix& SA() const noexcept { return SA_; }

    /// z = H_S^{-1} g.
    Vector solve(const Vector& g, CostCounters* counters = nullptr) const {
        if (g.size() != d()) throw InvalidInput("SketchedSystem::solve: dimension mismatch");
        if (counters) counters->solve += flops_per_solve();
        if (kind_ == FactorKind::WoodburyInner) {
            Vector u = SA_ * g;
            Vector w = llt_.solve(u);
            return (g - SA_.transpose() * w) / (nu_ * nu_);
        }
        return llt_.solve(g);
    }

    /// Multiply-adds of the one-time factorization.
    std::uint64_t factor_flops() const noexcept {
        const auto mm = static_cast<std::uint64_t>(m());
        const auto dd = static_cast<std::uint64_t>(d());
        if (kind_ == FactorKind::WoodburyInner) return mm * mm * dd + mm * mm * mm / 3;
        return dd * dd * mm + dd * dd * dd / 3;
    }

    /// Multiply-adds per H_S^{-1} application: 2 m d + m^2 on the Woodbury
    /// path, d^2 on the direct path (two triangular substitutions).
    std::uint64_t flops_per_solve() const noexcept {
        const auto mm = static_cast<std::uint64_t>(m());
        const auto dd = static_cast<std::uint64_t>(d());
        if (kind_ == FactorKind::WoodburyInner) return 2 * mm * dd + mm * mm + 2 * dd;
        return dd * dd + dd;
    }

private:
    SketchedSystem(Matrix SA, double nu)
        : SA_(std::move(SA)), nu_(nu),
          kind_(SA_.rows() < SA_.cols() ? FactorKind::WoodburyInner : FactorKind::DirectGram) {
        const double nu2 = nu_ * nu_;
        if (kind_ == FactorKind::WoodburyInner) {
            Matrix inner = SA_ * SA_.transpose();
            inner.diagonal().array() += nu2;
            llt_.compute(inner);
        } else {
            Matrix gram = SA_.transpose() * SA_;
            gram.diagonal().array() += nu2;
            llt_.compute(gram);
        }
        if (llt_.info() != Eigen::Success)
            throw NumericalBreakdown("SketchedSystem: Cholesky factorization failed");
    }

    Matrix SA_;
    double nu_;
    FactorKind kind_;
    Eigen::LLT<Matrix> llt_;
};

/// Sketched Newton decrement r = 1/2 g . g_tilde for g_tilde = H_S^{-1} g.
/// Nonnegative up to roundoff; a significantly negative value signals a
/// corrupted factorization.
inline double newton_decrement(const Vector& g, const Vector& g_tilde) {
    if (g.size() != g_tilde.size()) throw InvalidInput("newton_decrement: dimension mismatch");
    const double r = 0.5 * g.dot(g_tilde);
    if (r < -1e-12 * (1.0 + g.squaredNorm()))
        throw NumericalBreakdown("newton_decrement: negative decrement");
    return r < 0.0 ? 0.0 : r;
}

} // namespace ihs
