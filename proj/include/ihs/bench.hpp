#pragma once

#include "ihs/baselines.hpp"
#include "ihs/datasets.hpp"
#include "ihs/dual.hpp"
#include "ihs/solver.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

namespace ihs {

enum class SolverId { AdaptivePolyak, AdaptiveGradient, CG, PCG };

inline std::string solver_name(SolverId id) {
    switch (id) {
        case SolverId::AdaptivePolyak: return "adaptive";
        case SolverId::AdaptiveGradient: return "adaptive-gd";
        case SolverId::CG: return "cg";
        case SolverId::PCG: return "pcg";
    }
    return "?";
}

struct SolverSpec {
    SolverId id = SolverId::AdaptivePolyak;
    SketchKind sketch = SketchKind::Gaussian;
    double rho = 0.1;
    double eta = 0.01;
    Index m_initial = 1;
    Index max_iters = 2000;
    bool enforce_validity = true;
    std::string label; ///< defaults to solver_name(id)

    std::string name() const { return label.empty() ? solver_name(id) : label; }
};

/// Uniform summary of one solve, whichever solver produced it.
struct RunSummary {
    std::string solver;
    double nu = 0.0;
    Vector x;
    Vector dual_final; ///< kept for warm-starting underdetermined paths
    bool ok = false;
    bool converged = false;
    Index iterations = 0;
    Index final_m = 0;
    Index rejections = 0;
    double wall_seconds = 0.0;
    std::uint64_t flops = 0;
    std::string error;
    double delta = std::numeric_limits<double>::quiet_NaN(); ///< oracle mode only
};

struct PathResult {
    std::vector<double> nus;
    std::vector<RunSummary> entries;
    std::vector<double> cumulative_seconds;
};

/// One solve of `dataset` at regularizer `nu`, optionally warm-started.
inline RunSummary run_one(const Dataset& dataset, double nu, const SolverSpec& spec, double eps,
                          std::uint64_t seed, const RunSummary* warm = nullptr) {
    RunSummary out;
    out.solver = spec.name();
    out.nu = nu;
    try {
        ProblemInstance p = ProblemInstance::make(dataset.A, dataset.b, nu);
        const bool under = p.orientation() == Orientation::Underdetermined && p.rows() != p.cols();
        switch (spec.id) {
            case SolverId::AdaptivePolyak:
            case SolverId::AdaptiveGradient: {
                SolverConfig cfg;
                cfg.rho = spec.rho;
                cfg.eta = spec.eta;
                cfg.sketch_kind = spec.sketch;
                cfg.m_initial = spec.m_initial;
                cfg.eps = eps;
                cfg.max_iters = spec.max_iters;
                cfg.mode = spec.id == SolverId::AdaptivePolyak ? SolveMode::PolyakThenGradient
                                                               : SolveMode::GradientOnly;
                cfg.seed = seed;
                cfg.enforce_validity = spec.enforce_validity;
                if (warm && warm->ok) {
                    if (under && warm->dual_final.size() == p.rows())
                        cfg.warm_start = warm->dual_final;
                    else if (!under && warm->x.size() == p.cols())
                        cfg.warm_start = warm->x;
                }
                SolveReport rep = under ? solve_underdetermined(p, cfg) : adaptive_solve(p, cfg);
                out.x = rep.x;
                out.dual_final = rep.dual_final;
                out.converged = rep.converged;
                out.iterations = rep.iterations;
                out.final_m = rep.final_m;
                out.rejections = rep.rejections;
                out.wall_seconds = rep.wall_seconds;
                out.flops = rep.counters.total();
                break;
            }
            case SolverId::CG: {
                const Vector* x0 = warm && warm->ok && warm->x.size() == p.cols() ? &warm->x : nullptr;
                CgResult r = cg_solve(p, eps, spec.max_iters, x0);
                out.x = r.x;
                out.converged = r.converged;
                out.iterations = r.iterations;
                out.wall_seconds = r.wall_seconds;
                out.flops = r.counters.total();
                break;
            }
            case SolverId::PCG: {
                const Vector* x0 = warm && warm->ok && warm->x.size() == p.cols() ? &warm->x : nullptr;
                PcgResult r = pcg_solve(p, spec.sketch, seed, spec.rho, eps, spec.max_iters, x0);
                out.x = r.x;
                out.converged = r.converged;
                out.iterations = r.iterations;
                out.final_m = r.m;
                out.wall_seconds = r.wall_seconds;
                out.flops = r.counters.total();
                break;
            }
        }
        out.ok = true;
    } catch (const Error& e) {
        out.error = e.what();
    }
    return out;
}

/// Regularization path: solves for each nu in strictly decreasing order,
/// warm-starting every solve at the previous solution. Failures are
/// recorded per-nu and the path continues. With `oracle_mode`, each entry
/// additionally records the prediction error against a direct solve.
inline PathResult run_path(const Dataset& dataset, const std::vector<double>& nus,
                           const SolverSpec& spec, double eps, std::uint64_t seed,
                           bool oracle_mode = false) {
    if (nus.empty()) throw InvalidInput("run_path: empty regularization path");
    for (std::size_t i = 1; i < nus.size(); ++i)
        if (!(nus[i] < nus[i - 1]))
            throw InvalidInput("run_path: nu values must be strictly decreasing");

    PathResult path;
    path.nus = nus;
    double cum = 0.0;
    const RunSummary* warm = nullptr;
    for (std::size_t j = 0; j < nus.size(); ++j) {
        RunSummary s = run_one(dataset, nus[j], spec, eps, derive_seed(seed, j), warm);
        if (oracle_mode && s.ok) {
            ProblemInstance p = ProblemInstance::make(dataset.A, dataset.b, nus[j]);
            Vector x_star = p.orientation() == Orientation::Overdetermined
                                ? direct_solve(p)
                                : Vector((dataset.A * dataset.A.transpose() +
                                          nus[j] * nus[j] * Matrix::Identity(p.rows(), p.rows()))
                                             .llt()
                                             .solve(dataset.b));
            if (p.orientation() != Orientation::Overdetermined)
                x_star = (dataset.A.transpose() * x_star).eval();
            s.delta = 0.5 * (dataset.A * (s.x - x_star)).squaredNorm() +
                      0.5 * nus[j] * nus[j] * (s.x - x_star).squaredNorm();
        }
        cum += s.wall_seconds;
        path.cumulative_seconds.push_back(cum);
        path.entries.push_back(std::move(s));
        warm = &path.entries.back();
    }
    return path;
}

struct SolverAggregate {
    std::string label;
    double mean_seconds = 0.0;
    double std_seconds = 0.0;
    double mean_iterations = 0.0;
    double mean_final_m = 0.0;
    Index max_final_m = 0;
    bool all_converged = true;
    std::vector<double> mean_cumulative; ///< per path position
};

struct ComparisonReport {
    std::vector<double> nus;
    int repeats = 0;
    double eps = 0.0;
    std::vector<SolverAggregate> aggregates;
    std::vector<std::vector<PathResult>> runs; ///< [solver][repeat]
};

/// Runs every solver `repeats` times with distinct seeds over the same
/// dataset and path, and aggregates wall time, iterations and sketch sizes.
inline ComparisonReport compare_solvers(const Dataset& dataset, const std::vector<double>& nus,
                                        const std::vector<SolverSpec>& specs, double eps,
                                        int repeats, std::uint64_t base_seed,
                                        bool oracle_mode = false) {
    if (repeats < 1) throw InvalidInput("compare_solvers: repeats must be >= 1");
    if (specs.empty()) throw InvalidInput("compare_solvers: no solvers given");

    ComparisonReport rep;
    rep.nus = nus;
    rep.repeats = repeats;
    rep.eps = eps;
    for (std::size_t si = 0; si < specs.size(); ++si) {
        std::vector<PathResult> per_repeat;
        for (int r = 0; r < repeats; ++r)
            per_repeat.push_back(run_path(dataset, nus, specs[si], eps,
                                          derive_seed(base_seed, 97 * si + static_cast<std::uint64_t>(r)),
                                          oracle_mode));

        SolverAggregate agg;
        agg.label = specs[si].name();
        std::vector<double> totals;
        double iter_sum = 0.0, m_sum = 0.0;
        std::size_t count = 0;
        agg.mean_cumulative.assign(nus.size(), 0.0);
        for (const auto& pr : per_repeat) {
            totals.push_back(pr.cumulative_seconds.back());
            for (std::size_t j = 0; j < nus.size(); ++j) {
                const RunSummary& s = pr.entries[j];
                agg.mean_cumulative[j] += pr.cumulative_seconds[j] / repeats;
                iter_sum += s.iterations;
                m_sum += s.final_m;
                agg.max_final_m = std::max(agg.max_final_m, s.final_m);
                agg.all_converged = agg.all_converged && s.ok && s.converged;
                ++count;
            }
        }
        agg.mean_seconds = std::accumulate(totals.begin(), totals.end(), 0.0) / repeats;
        double var = 0.0;
        for (double t : totals) var += (t - agg.mean_seconds) * (t - agg.mean_seconds);
        agg.std_seconds = repeats > 1 ? std::sqrt(var / (repeats - 1)) : 0.0;
        agg.mean_iterations = iter_sum / static_cast<double>(count);
        agg.mean_final_m = m_sum / static_cast<double>(count);
        rep.aggregates.push_back(std::move(agg));
        rep.runs.push_back(std::move(per_repeat));
    }
    return rep;
}

/// Plot data mirroring the time-vs-regularizer figures: header row, comma
/// separated, x column first, one column (series) per solver; values are
/// mean cumulative seconds at each nu.
inline void write_plot_csv(std::ostream& os, const ComparisonReport& rep) {
    os << "nu";
    for (const auto& a : rep.aggregates) os << ',' << a.label;
    os << '\n';
    for (std::size_t j = 0; j < rep.nus.size(); ++j) {
        os << rep.nus[j];
        for (const auto& a : rep.aggregates) os << ',' << a.mean_cumulative[j];
        os << '\n';
    }
}

} // namespace ihs
