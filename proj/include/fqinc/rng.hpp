#pragma once

// Deterministic randomness. Every trial gets its own mt19937_64 seeded by a splitmix64 hash of
// (master seed, stream, trial index); integers and subsets are drawn by hand-written rejection sampling
// and partial Fisher-Yates so results do not depend on the standard library's distribution code.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "fqinc/error.hpp"

namespace fqinc {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t trial_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t trial) {
    return splitmix64(splitmix64(splitmix64(master) ^ stream) ^ trial);
}

inline Rng trial_rng(std::uint64_t master, std::uint64_t stream, std::uint64_t trial) {
    return Rng(trial_seed(master, stream, trial));
}

/// Uniform in [0, n), n >= 1.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
    require(n >= 1, ErrorKind::InvalidRange, "uniform_below needs n >= 1");
    const std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % n);  // multiple of n
    std::uint64_t x;
    do x = rng();
    while (x >= limit);
    return x % n;
}

/// k distinct indices from [0, universe), sorted. The first k slots of a partial Fisher-Yates pass.
inline std::vector<std::uint64_t> random_subset(Rng& rng, std::uint64_t universe, std::uint64_t k) {
    require(k <= universe, ErrorKind::InvalidRange, "subset larger than universe");
    require(universe <= (std::uint64_t(1) << 26), ErrorKind::TooLarge, "subset universe exceeds guard");
    std::vector<std::uint64_t> perm(universe);
    for (std::uint64_t i = 0; i < universe; ++i) perm[i] = i;
    for (std::uint64_t i = 0; i < k; ++i) std::swap(perm[i], perm[i + uniform_below(rng, universe - i)]);
    perm.resize(k);
    std::sort(perm.begin(), perm.end());
    return perm;
}

}  // namespace fqinc
