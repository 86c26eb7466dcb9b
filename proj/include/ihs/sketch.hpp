#pragma once

#include "ihs/errors.hpp"
#include "ihs/rng.hpp"
#include "ihs/types.hpp"

#include <Eigen/QR>

#include <bit>
#include <cmath>
#include <cstdint>
#include <span>

namespace ihs {

enum class SketchKind { Gaussian, SRHT };

/// Description of a random embedding S in R^{m x n}. Together with the input
/// matrix, (kind, m, seed) fully determines the output of apply_sketch.
struct SketchConfig {
    SketchKind kind = SketchKind::Gaussian;
    Index m = 1;
    std::uint64_t seed = 0;
};

inline Index next_pow2(Index n) {
    return static_cast<Index>(std::bit_ceil(static_cast<std::uint64_t>(n)));
}

/// In-place normalized fast Walsh-Hadamard transform, v <- H v with
/// H H^T = I. Length must be a power of two; O(n log n) butterflies with a
/// single 1/sqrt(n) scaling pass at the end.
inline void fwht_inplace(std::span<double> v) {
    const std::size_t n = v.size();
    if (n == 0 || !std::has_single_bit(n))
        throw InvalidInput("fwht_inplace: length must be a power of two");
    for (std::size_t h = 1; h < n; h <<= 1) {
        for (std::size_t i = 0; i < n; i += 2 * h) {
            for (std::size_t j = i; j < i + h; ++j) {
                const double s = v[j];
                const double t = v[j + h];
                v[j] = s + t;
                v[j + h] = s - t;
            }
        }
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t j = 0; j < n; ++j) v[j] *= scale;
}

inline void fwht_inplace(Vector& v) {
    fwht_inplace(std::span<double>(v.data(), static_cast<std::size_t>(v.size())));
}

/// S A for a Gaussian embedding with i.i.d. N(0, 1/m) entries. S is a
/// deterministic function of (m, n, seed) only, so applying the same config
/// to two matrices with equal row counts uses the same S. Cost m*n*d.
inline Matrix gaussian_sketch(const Matrix& A, Index m, std::uint64_t seed,
                              CostCounters* counters = nullptr) {
    if (m < 1) throw InvalidInput("gaussian_sketch: m must be >= 1");
    const Index n = A.rows();
    auto gen = make_stream(seed, 0);
    Matrix S(m, n);
    fill_gaussian(S, gen, 1.0 / std::sqrt(static_cast<double>(m)));
    if (counters)
        counters->sketch += static_cast<std::uint64_t>(m) * static_cast<std::uint64_t>(n) *
                            static_cast<std::uint64_t>(A.cols());
    return S * A;
}

/// S A for the subsampled randomized Hadamard transform
///     S = sqrt(n_pad/m) * R H diag(eps),
/// where eps are i.i.d. Rademacher signs, H is the normalized Walsh-Hadamard
/// transform on n_pad = 2^ceil(log2 n) rows (A is zero-padded up to n_pad),
/// and R selects m rows uniformly without replacement. Sign and row streams
/// derive independently from `seed`. Cost Theta(n_pad * d * log n_pad).
inline Matrix srht_sketch(const Matrix& A, Index m, std::uint64_t seed,
                          CostCounters* counters = nullptr) {
    if (m < 1) throw InvalidInput("srht_sketch: m must be >= 1");
    const Index n = A.rows();
    const Index d = A.cols();
    const Index n_pad = next_pow2(n);
    if (m > n_pad) throw SketchTooLarge("srht_sketch: m exceeds padded row count");

    auto sign_stream = make_stream(seed, 1);
    auto row_stream = make_stream(seed, 2);
    const std::vector<double> eps = rademacher(n_pad, sign_stream);
    const std::vector<Index> rows = sample_without_replacement(n_pad, m, row_stream);

    Matrix B = Matrix::Zero(n_pad, d);
    for (Index i = 0; i < n; ++i) B.row(i) = eps[static_cast<std::size_t>(i)] * A.row(i);
    for (Index j = 0; j < d; ++j)
        fwht_inplace(std::span<double>(B.col(j).data(), static_cast<std::size_t>(n_pad)));

    const double scale = std::sqrt(static_cast<double>(n_pad) / static_cast<double>(m));
    Matrix SA(m, d);
    for (Index k = 0; k < m; ++k) SA.row(k) = scale * B.row(rows[static_cast<std::size_t>(k)]);

    if (counters) {
        const auto np = static_cast<std::uint64_t>(n_pad);
        const auto dd = static_cast<std::uint64_t>(d);
        const auto log2np = static_cast<std::uint64_t>(std::bit_width(static_cast<std::uint64_t>(n_pad)) - 1);
        counters->sketch += dd * np * log2np                          // butterflies
                            + static_cast<std::uint64_t>(n) * dd      // sign flips
                            + static_cast<std::uint64_t>(m) * dd;     // selection + scaling
    }
    return SA;
}

inline Matrix apply_sketch(const Matrix& A, const SketchConfig& cfg,
                           CostCounters* counters = nullptr) {
    switch (cfg.kind) {
        case SketchKind::Gaussian: return gaussian_sketch(A, cfg.m, cfg.seed, counters);
        case SketchKind::SRHT: return srht_sketch(A, cfg.m, cfg.seed, counters);
    }
    throw InvalidInput("apply_sketch: unknown sketch kind");
}

/// Test hook: Q^T A for a Haar-ish orthogonal square Q (QR of a seeded
/// Gaussian matrix), so S^T S = I_n exactly and C_S = I.
inline Matrix orthogonal_sketch(const Matrix& A, std::uint64_t seed) {
    const Index n = A.rows();
    auto gen = make_stream(seed, 3);
    Matrix G(n, n);
    fill_gaussian(G, gen);
    Matrix Q = Eigen::HouseholderQR<Matrix>(G).householderQ();
    return Q.transpose() * A;
}

} // namespace ihs
