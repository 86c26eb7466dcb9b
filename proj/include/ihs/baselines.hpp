#pragma once

#include "ihs/problem.hpp"
#include "ihs/sketch.hpp"

#include <Eigen/Cholesky>

#include <chrono>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

namespace ihs {

struct CgResult {
    Vector x;
    Index iterations = 0;
    std::vector<double> residuals; ///< ||H x_k - A^T b|| per iteration, incl. start
    bool converged = false;
    CostCounters counters;
    double wall_seconds = 0.0;
};

struct PcgResult {
    Vector x;
    Index iterations = 0;
    std::vector<double> residuals;
    bool converged = false;
    Index m = 0;                  ///< sketch rows actually used
    bool m_capped = false;        ///< prescription exceeded n_pad and was capped
    std::uint64_t setup_flops = 0;
    CostCounters counters;
    double wall_seconds = 0.0;
};

/// Conjugate gradient on the regularized normal equations
/// (A^T A + nu^2 I) x = A^T b, matvecs realized as two O(n d) products.
/// Stops when ||H x - A^T b|| <= tol ||A^T b||.
inline CgResult cg_solve(const ProblemInstance& p, double tol, Index max_iters,
                         const Vector* x0 = nullptr) {
    if (p.orientation() != Orientation::Overdetermined)
        throw InvalidInput("cg_solve: expects an overdetermined instance");
    const auto t_start = std::chrono::steady_clock::now();
    const double nu2 = p.nu() * p.nu();
    const auto n = static_cast<std::uint64_t>(p.rows());
    const auto d = static_cast<std::uint64_t>(p.cols());

    CgResult res;
    auto apply_h = [&](const Vector& v) -> Vector {
        res.counters.matvec += 2 * n * d + 2 * d;
        return p.A().transpose() * (p.A() * v) + nu2 * v;
    };

    const Vector atb = p.A().transpose() * p.b();
    const double target = tol * atb.norm();
    res.x = x0 ? *x0 : Vector::Zero(p.cols()).eval();
    Vector r = atb - apply_h(res.x);
    res.residuals.push_back(r.norm());
    if (res.residuals.back() <= target) {
        res.converged = true;
        res.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
        return res;
    }

    Vector pdir = r;
    double rr = r.squaredNorm();
    for (Index k = 0; k < max_iters; ++k) {
        Vector hp = apply_h(pdir);
        const double alpha = rr / pdir.dot(hp);
        res.x += alpha * pdir;
        r -= alpha * hp;
        ++res.iterations;
        const double rnorm = r.norm();
        res.residuals.push_back(rnorm);
        if (rnorm <= target) {
            res.converged = true;
            break;
        }
        const double rr_new = r.squaredNorm();
        pdir = r + (rr_new / rr) * pdir;
        rr = rr_new;
    }
    res.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return res;
}

/// Preconditioned CG given a prebuilt sketched matrix SA: precondition the
/// regularized normal equations by the upper-triangular Cholesky factor R of
/// (SA)^T SA + nu^2 I, applied through triangular substitutions (never an
/// explicit inverse). Same stopping rule as cg_solve.
inline PcgResult pcg_solve_with(const ProblemInstance& p, const Matrix& SA, double tol,
                                Index max_iters, PcgResult res = {}, const Vector* x0 = nullptr) {
    if (p.orientation() != Orientation::Overdetermined)
        throw InvalidInput("pcg_solve: expects an overdetermined instance");
    const auto t_start = std::chrono::steady_clock::now();
    const double nu2 = p.nu() * p.nu();
    const auto n = static_cast<std::uint64_t>(p.rows());
    const auto d = static_cast<std::uint64_t>(p.cols());
    const auto mm = static_cast<std::uint64_t>(SA.rows());
    res.m = SA.rows();

    Matrix gram = SA.transpose() * SA;
    gram.diagonal().array() += nu2;
    Eigen::LLT<Matrix> llt(gram);
    if (llt.info() != Eigen::Success)
        throw NumericalBreakdown("pcg_solve: preconditioner factorization failed");
    res.setup_flops += d * d * mm + d * d * d / 3;
    res.counters.factor += d * d * mm + d * d * d / 3;

    auto apply_h = [&](const Vector& v) -> Vector {
        res.counters.matvec += 2 * n * d + 2 * d;
        return p.A().transpose() * (p.A() * v) + nu2 * v;
    };
    auto apply_minv = [&](const Vector& v) -> Vector {
        res.counters.solve += 2 * d * d;
        // R^{-1} R^{-T} v via the cached lower factor L = R^T
        Vector w = llt.matrixL().solve(v);
        return llt.matrixU().solve(w);
    };

    const Vector atb = p.A().transpose() * p.b();
    const double target = tol * atb.norm();
    res.x = x0 ? *x0 : Vector::Zero(p.cols()).eval();
    Vector r = atb - apply_h(res.x);
    res.residuals.push_back(r.norm());
    if (res.residuals.back() <= target) {
        res.converged = true;
        res.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
        return res;
    }

    Vector z = apply_minv(r);
    Vector pdir = z;
    double rz = r.dot(z);
    for (Index k = 0; k < max_iters; ++k) {
        Vector hp = apply_h(pdir);
        const double alpha = rz / pdir.dot(hp);
        res.x += alpha * pdir;
        r -= alpha * hp;
        ++res.iterations;
        const double rnorm = r.norm();
        res.residuals.push_back(rnorm);
        if (rnorm <= target) {
            res.converged = true;
            break;
        }
        z = apply_minv(r);
        const double rz_new = r.dot(z);
        pdir = z + (rz_new / rz) * pdir;
        rz = rz_new;
    }
    res.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return res;
}

/// Sketch size prescribed for randomized-preconditioning baselines:
/// m = d/rho for Gaussian embeddings, m = d log(d)/rho for the SRHT
/// (natural log), the latter capped at the padded row count.
inline std::pair<Index, bool> pcg_sketch_size(Index n, Index d, SketchKind kind, double rho) {
    if (!(rho > 0.0 && rho < 1.0)) throw InvalidInput("pcg_sketch_size: rho must be in (0,1)");
    double m_raw = kind == SketchKind::Gaussian
                       ? static_cast<double>(d) / rho
                       : static_cast<double>(d) * std::log(static_cast<double>(d)) / rho;
    Index m = static_cast<Index>(std::ceil(m_raw));
    m = std::max<Index>(m, 1);
    bool capped = false;
    if (kind == SketchKind::SRHT) {
        const Index n_pad = next_pow2(n);
        if (m > n_pad) {
            m = n_pad;
            capped = true;
        }
    }
    return {m, capped};
}

/// Sketch-preconditioned CG with the prescription above.
inline PcgResult pcg_solve(const ProblemInstance& p, SketchKind kind, std::uint64_t seed,
                           double rho, double tol, Index max_iters, const Vector* x0 = nullptr) {
    auto [m, capped] = pcg_sketch_size(p.rows(), p.cols(), kind, rho);
    PcgResult res;
    res.m_capped = capped;
    Matrix SA = apply_sketch(p.A(), SketchConfig{kind, m, seed}, &res.counters);
    res.setup_flops += res.counters.sketch;
    return pcg_solve_with(p, SA, tol, max_iters, std::move(res), x0);
}

} // namespace ihs
