#pragma once

#include <Eigen/Dense>

#include <cstdint>

namespace ihs {

using Index  = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Analytic multiply-add counters, accumulated by every operation whose
/// asymptotic cost the library makes claims about. Counting is done with
/// closed-form expressions per call (BLAS-level granularity), not by
/// instrumenting scalar arithmetic, so the counters are exact and
/// deterministic.
struct CostCounters {
    std::uint64_t sketch = 0;   ///< forming S*A
    std::uint64_t factor = 0;   ///< factorizing the sketched Hessian
    std::uint64_t solve = 0;    ///< applying H_S^{-1}
    std::uint64_t matvec = 0;   ///< rectangular products with A / A^T

    std::uint64_t total() const noexcept { return sketch + factor + solve + matvec; }

    CostCounters& operator+=(const CostCounters& o) noexcept {
        sketch += o.sketch;
        factor += o.factor;
        solve += o.solve;
        matvec += o.matvec;
        return *this;
    }
};

} // namespace ihs
