#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace hgr {

// Per-repetition seeds come from SplitMix64, draws from std::mt19937_64 and
// bounded integers from rejection sampling.

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed of repetition `rep`: the (rep + 1)-th SplitMix64 output for `seed`.
inline std::uint64_t repetition_seed(std::uint64_t seed, std::uint64_t rep) {
    return splitmix64(seed + rep * 0x9E3779B97F4A7C15ULL);
}

/// Uniform integer in [0, bound). bound must be positive.
inline std::uint64_t uniform_below(std::mt19937_64& gen, std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t x = gen();
        if (x >= threshold) return x % bound;
    }
}

/// `count` distinct elements of `pool` chosen by a partial Fisher-Yates
/// shuffle, returned in ascending order.
std::vector<std::size_t> sample_without_replacement(std::vector<std::size_t> pool, std::size_t count,
                                                    std::mt19937_64& gen);

}  // namespace hgr
