#pragma once

#include "ihs/solver.hpp"

namespace ihs {

/// Underdetermined case d >= n, solved through the dual
///     z* = argmin_z 1/2 ||A^T z||^2 + nu^2/2 ||z||^2 - b^T z,
/// an overdetermined ridge problem in the data matrix A^T whose gradient is
/// A A^T z + nu^2 z - b, so the implicit observation vector A^+ b is never
/// materialized. The primal solution is recovered as x = A^T z_T; the report
/// carries the dual trace and the mapped x.
inline SolveReport solve_underdetermined(const ProblemInstance& p, const SolverConfig& cfg) {
    if (p.orientation() != Orientation::Underdetermined)
        throw InvalidInput("solve_underdetermined: expects an underdetermined instance");

    const Matrix At = p.A().transpose(); // d x n, gets sketched (SRHT pads d)
    detail::AdaptiveCore core{
        At, p.nu(), [&p](const Vector& z, CostCounters* c) -> Vector {
            Vector u = p.A().transpose() * z;
            Vector g = p.A() * u - p.b() + p.nu() * p.nu() * z;
            if (c) {
                const auto n = static_cast<std::uint64_t>(p.rows());
                const auto d = static_cast<std::uint64_t>(p.cols());
                c->matvec += 2 * n * d + d + 2 * n;
            }
            return g;
        }};
    SolveReport rep = detail::adaptive_solve_core(core, cfg);
    rep.dual_final = rep.x;
    rep.x = p.A().transpose() * rep.x; // x = A^T z; iterates keep the dual trace
    return rep;
}

} // namespace ihs
