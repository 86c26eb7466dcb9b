#pragma once

#include "ihs/problem.hpp"
#include "ihs/sketch.hpp"
#include "ihs/sketched_system.hpp"
#include "ihs/tuning.hpp"

#include <Eigen/Cholesky>

#include <chrono>
#include <cmath>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace ihs {

enum class SolveMode {
    PolyakThenGradient, ///< heavy-ball candidate first, gradient fallback
    GradientOnly        ///< gradient candidate only
};

enum class StepKind { Polyak, Gradient, Resketch };

/// Configuration of the adaptive solver. Target rates and step sizes are
/// derived from (sketch_kind, rho, eta) unless a tuning override is given.
struct SolverConfig {
    double rho = 0.1;
    double eta = 0.01; ///< Gaussian tail parameter; ignored for the SRHT
    SketchKind sketch_kind = SketchKind::Gaussian;
    Index m_initial = 1;
    double eps = 1e-10;    ///< target on the computable ratio r_t / r_1
    Index max_iters = 500;
    std::optional<Index> max_sketch; ///< optional extra cap on the sketch size
    SolveMode mode = SolveMode::PolyakThenGradient;
    std::uint64_t seed = 0;

    /// Permit (rho, eta) outside the proven Gaussian region.
    bool enforce_validity = true;

    /// Convention after a rejection: recompute r_t under the fresh sketch so
    /// the next gradient ratio compares decrements under one sketch (true),
    /// or keep the stored r_t as in the verbatim listing (false). Resketch
    /// log entries carry both values either way.
    bool recompute_r_after_resketch = true;

    /// Record every accepted iterate in the report (diagnostics; the solver
    /// itself never consults any SVD quantity).
    bool record_iterates = false;

    std::optional<Vector> warm_start; ///< x_0 = x_1 = warm_start (default zero)

    /// Test hooks.
    std::optional<TuningParams> tuning_override;
    std::function<Matrix(const Matrix&, Index, std::uint64_t)> sketch_override;
};

/// One audit-trail entry. Accepted steps carry the new iterate index and its
/// decrement; resketch entries carry the unchanged iteration index, the
/// doubled sketch size, and the decrement before/after refactorization.
struct IterationRecord {
    Index t = 0;
    Index m = 0;
    double r = 0.0;
    double r_prev = 0.0;
    StepKind branch = StepKind::Gradient;
};

struct SolveReport {
    Vector x;
    Index iterations = 1; ///< T, the index of the final iterate (x_1 counts as 1)
    Index rejections = 0; ///< K, number of sketch doublings
    Index final_m = 0;
    double r1 = 0.0;
    double r_final = 0.0;
    bool converged = false;
    bool sketch_exhausted = false; ///< growth hit its cap; rate checks disabled from there
                                   ///< on and only non-increasing steps are taken
    std::vector<IterationRecord> log;
    std::vector<Vector> iterates; ///< accepted iterates incl. x_1 (only if requested)
    Vector dual_final;            ///< final dual iterate z_T (underdetermined solves only)
    CostCounters counters;
    double wall_seconds = 0.0;
    TuningParams tuning;
    bool recompute_r_after_resketch = true;
};

namespace detail {

/// The adaptive loop, shared by the primal and dual entry points. `target`
/// is the matrix the embeddings are applied to and `grad` evaluates the
/// gradient of the quadratic objective in O(rows * dim).
struct AdaptiveCore {
    const Matrix& target;
    double nu;
    std::function<Vector(const Vector&, CostCounters*)> grad;
};

inline Matrix core_sketch(const AdaptiveCore& core, const SolverConfig& cfg, Index m,
                          std::uint64_t sub_seed, CostCounters* counters) {
    if (cfg.sketch_override) return cfg.sketch_override(core.target, m, sub_seed);
    return apply_sketch(core.target, SketchConfig{cfg.sketch_kind, m, sub_seed}, counters);
}

inline SolveReport adaptive_solve_core(const AdaptiveCore& core, const SolverConfig& cfg) {
    if (!(cfg.eps > 0.0 && cfg.eps < 1.0)) throw InvalidInput("adaptive_solve: eps must be in (0,1)");
    if (cfg.m_initial < 1) throw InvalidInput("adaptive_solve: m_initial must be >= 1");
    if (cfg.max_iters < 1) throw InvalidInput("adaptive_solve: max_iters must be >= 1");

    const auto t_start = std::chrono::steady_clock::now();
    const Index dim = core.target.cols();
    const Index n_rows = core.target.rows();

    TuningParams tp;
    if (cfg.tuning_override) {
        tp = *cfg.tuning_override;
    } else if (cfg.sketch_kind == SketchKind::Gaussian) {
        auto [lam, Lam] = gaussian_targets(cfg.rho, cfg.eta, cfg.enforce_validity);
        tp = rates_from_bounds(lam, Lam);
    } else {
        auto [lam, Lam] = srht_targets(cfg.rho);
        tp = rates_from_bounds(lam, Lam);
    }

    // Growth cap: n_pad rows for the SRHT (hard limit of the transform),
    // n rows for Gaussian embeddings; an explicit max_sketch tightens both.
    Index cap = cfg.sketch_kind == SketchKind::SRHT ? next_pow2(n_rows) : n_rows;
    if (cfg.max_sketch) cap = std::min(cap, *cfg.max_sketch);
    cap = std::max(cap, cfg.m_initial);

    SolveReport rep;
    rep.tuning = tp;
    rep.recompute_r_after_resketch = cfg.recompute_r_after_resketch;

    Index m = cfg.m_initial;
    Index K = 0;

    Matrix SA = core_sketch(core, cfg, m, derive_seed(cfg.seed, 0), &rep.counters);
    SketchedSystem sys = SketchedSystem::factorize(std::move(SA), core.nu, &rep.counters);

    Vector x_cur = cfg.warm_start ? *cfg.warm_start : Vector::Zero(dim).eval();
    if (x_cur.size() != dim) throw InvalidInput("adaptive_solve: warm start has wrong dimension");
    Vector x_prev = x_cur;

    Vector g = core.grad(x_cur, &rep.counters);
    Vector gt = sys.solve(g, &rep.counters);
    double r = newton_decrement(g, gt);
    const double r1 = r;
    rep.r1 = r1;
    if (cfg.record_iterates) rep.iterates.push_back(x_cur);

    Index t = 1;
    bool converged = !(r > cfg.eps * r1) || r1 == 0.0;
    bool checks_enabled = true;

    struct Candidate {
        Vector x, g, gt;
        double r;
    };
    auto evaluate = [&](Vector x_c) -> Candidate {
        Vector g_c = core.grad(x_c, &rep.counters);
        Vector gt_c = sys.solve(g_c, &rep.counters);
        const double r_c = newton_decrement(g_c, gt_c);
        return {std::move(x_c), std::move(g_c), std::move(gt_c), r_c};
    };
    auto accept = [&](Candidate&& c, StepKind kind) {
        const double r_prev = r;
        x_prev = std::move(x_cur);
        x_cur = std::move(c.x);
        g = std::move(c.g);
        gt = std::move(c.gt);
        r = c.r;
        ++t;
        rep.log.push_back({t, m, r, r_prev, kind});
        if (cfg.record_iterates) rep.iterates.push_back(x_cur);
        converged = r <= cfg.eps * r1;
    };

    while (!converged && t < cfg.max_iters) {
        if (checks_enabled && cfg.mode == SolveMode::PolyakThenGradient) {
            Candidate cand = evaluate(x_cur - tp.mu_p * gt + tp.beta_p * (x_cur - x_prev));
            const double ratio = std::pow(cand.r / r1, 1.0 / static_cast<double>(t));
            if (ratio <= tp.c_p || cand.r <= cfg.eps * r1) {
                accept(std::move(cand), StepKind::Polyak);
                continue;
            }
        }

        Candidate cand = evaluate(x_cur - tp.mu_gd * gt);
        const bool pass = checks_enabled
                              ? (cand.r <= tp.c_gd * r || cand.r <= cfg.eps * r1)
                              : cand.r <= r; // after the cap: any non-increasing step
        if (pass) {
            accept(std::move(cand), StepKind::Gradient);
            continue;
        }
        if (!checks_enabled) break; // capped and no longer descending

        // Both candidates rejected: double the sketch and retry iteration t.
        if (2 * m > cap) {
            rep.sketch_exhausted = true;
            checks_enabled = false;
            if (cand.r <= r) {
                accept(std::move(cand), StepKind::Gradient);
                continue;
            }
            break;
        }
        m *= 2;
        ++K;
        Matrix SA2 = core_sketch(core, cfg, m, derive_seed(cfg.seed, K), &rep.counters);
        sys = SketchedSystem::factorize(std::move(SA2), core.nu, &rep.counters);
        gt = sys.solve(g, &rep.counters);
        const double r_old = r;
        if (cfg.recompute_r_after_resketch) {
            r = newton_decrement(g, gt);
            converged = r <= cfg.eps * r1;
        }
        rep.log.push_back({t, m, r, r_old, StepKind::Resketch});
    }

    rep.x = std::move(x_cur);
    rep.iterations = t;
    rep.rejections = K;
    rep.final_m = m;
    rep.r_final = r;
    rep.converged = converged;
    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return rep;
}

} // namespace detail

/// Adaptive Polyak-IHS on an overdetermined instance: starting from a sketch
/// of m_initial rows, each iteration tries a heavy-ball candidate (accepted
/// iff (r+/r_1)^{1/t} <= c_p), then a gradient candidate (accepted iff
/// r+/r_t <= c_gd); if both fail, the sketch size doubles with a fresh
/// sub-seed and the iteration is retried. Terminates once r_t/r_1 <= eps or
/// max_iters is reached.
inline SolveReport adaptive_solve(const ProblemInstance& p, const SolverConfig& cfg) {
    if (p.orientation() != Orientation::Overdetermined)
        throw InvalidInput("adaptive_solve: expects an overdetermined instance "
                           "(use solve_underdetermined for d > n)");
    detail::AdaptiveCore core{
        p.A(), p.nu(),
        [&p](const Vector& x, CostCounters* c) { return gradient(p, x, c); }};
    return detail::adaptive_solve_core(core, cfg);
}

enum class FixedMode { Gradient, Polyak };

/// Fixed-sketch IHS: T heavy-ball updates
///     x_{t+1} = x_t - mu H_S^{-1} grad f(x_t) + beta (x_t - x_{t-1})
/// with (mu, beta) = (mu_gd, 0) or (mu_p, beta_p). Returns all iterates
/// (x_start first) for rate inspection.
inline std::vector<Vector> fixed_sketch_ihs(const ProblemInstance& p, const SketchedSystem& sys,
                                            const TuningParams& tp, Index T, FixedMode mode,
                                            const Vector* x_start = nullptr) {
    const double mu = mode == FixedMode::Gradient ? tp.mu_gd : tp.mu_p;
    const double beta = mode == FixedMode::Gradient ? 0.0 : tp.beta_p;
    Vector x = x_start ? *x_start : Vector::Zero(p.cols()).eval();
    Vector x_prev = x;
    std::vector<Vector> iterates;
    iterates.reserve(static_cast<std::size_t>(T) + 1);
    iterates.push_back(x);
    for (Index t = 0; t < T; ++t) {
        Vector step = sys.solve(gradient(p, x));
        Vector x_next = x - mu * step + beta * (x - x_prev);
        x_prev = std::move(x);
        x = std::move(x_next);
        iterates.push_back(x);
    }
    return iterates;
}

/// One step of the error recursion e_{t+1} = (I - mu C_S^{-1}) e_t
/// + beta (e_t - e_{t-1}) in Ubar^T Abar coordinates. Test/diagnostic
/// companion to fixed_sketch_ihs.
inline Vector error_recursion_step(const Matrix& C_S, double mu, double beta, const Vector& e_t,
                                   const Vector& e_prev) {
    Vector correction = C_S.llt().solve(e_t);
    return e_t - mu * correction + beta * (e_t - e_prev);
}

} // namespace ihs
