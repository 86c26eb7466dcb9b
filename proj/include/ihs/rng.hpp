#pragma once

#include "ihs/types.hpp"

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace ihs {

/// SplitMix64 step; used to derive independent sub-streams from one seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Derives a child seed from (seed, tag). Distinct tags give statistically
/// independent streams, so e.g. the SRHT sign vector and row subset can be
/// drawn from separate streams of the same user-facing seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
    std::uint64_t s = seed + 0x632be59bd9b4e019ULL * (tag + 1);
    std::uint64_t a = splitmix64(s);
    std::uint64_t b = splitmix64(s);
    return a ^ (b << 1);
}

inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t tag) {
    return std::mt19937_64(derive_seed(seed, tag));
}

/// Standard-normal fill, column-major, fixed order for reproducibility.
inline void fill_gaussian(Matrix& M, std::mt19937_64& gen, double stddev = 1.0) {
    std::normal_distribution<double> dist(0.0, stddev);
    for (Index j = 0; j < M.cols(); ++j)
        for (Index i = 0; i < M.rows(); ++i)
            M(i, j) = dist(gen);
}

inline void fill_gaussian(Vector& v, std::mt19937_64& gen, double stddev = 1.0) {
    std::normal_distribution<double> dist(0.0, stddev);
    for (Index i = 0; i < v.size(); ++i) v(i) = dist(gen);
}

/// i.i.d. uniform signs in {-1, +1}.
inline std::vector<double> rademacher(Index n, std::mt19937_64& gen) {
    std::vector<double> eps(static_cast<std::size_t>(n));
    for (auto& e : eps) e = (gen() & 1ULL) ? 1.0 : -1.0;
    return eps;
}

/// Draws m indices from {0,...,n-1} uniformly without replacement
/// (partial Fisher-Yates; O(n) memory, deterministic order).
inline std::vector<Index> sample_without_replacement(Index n, Index m, std::mt19937_64& gen) {
    std::vector<Index> pool(static_cast<std::size_t>(n));
    std::iota(pool.begin(), pool.end(), Index{0});
    std::vector<Index> out(static_cast<std::size_t>(m));
    for (Index k = 0; k < m; ++k) {
        std::uniform_int_distribution<Index> pick(k, n - 1);
        std::swap(pool[static_cast<std::size_t>(k)], pool[static_cast<std::size_t>(pick(gen))]);
        out[static_cast<std::size_t>(k)] = pool[static_cast<std::size_t>(k)];
    }
    return out;
}

} // namespace ihs
