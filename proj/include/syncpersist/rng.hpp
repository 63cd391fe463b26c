#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace syncpersist {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Derive a child seed from a master seed and a path of integer keys
/// (experiment id, cell index, member index, stream tag...). Any node of the
/// tree can be recomputed without touching its siblings.
constexpr std::uint64_t derive_seed(std::uint64_t master,
                                    std::initializer_list<std::uint64_t> path) noexcept {
    std::uint64_t s = splitmix64(master);
    for (std::uint64_t key : path) {
        s = splitmix64(s ^ splitmix64(key + 0x632BE59BD9B4E019ULL));
    }
    return s;
}

inline Rng make_rng(std::uint64_t seed) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    return Rng(seq);
}

// Stream tags used with derive_seed.
enum class Stream : std::uint64_t {
    graph = 1,
    initial_conditions = 2,
    perturbations = 3,
};

} // namespace syncpersist
