#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace moran {

// splitmix64 finalizer, used as the mixing step of the hierarchical hash.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) {
    return mix64(h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
}

// 128-bit hash of (seed, words) as two independently salted 64-bit lanes.
struct Hash128 {
    std::uint64_t lo, hi;
};

inline Hash128 hash128(std::uint64_t seed, std::span<const std::uint64_t> words) {
    std::uint64_t a = mix64(seed ^ 0x6a09e667f3bcc908ULL);
    std::uint64_t b = mix64(seed ^ 0xbb67ae8584caa73bULL);
    for (std::uint64_t w : words) {
        a = hash_combine(a, w);
        b = hash_combine(b, w ^ 0xa5a5a5a5a5a5a5a5ULL);
    }
    return {a, b};
}

inline std::mt19937_64 make_rng(std::uint64_t seed, std::span<const std::uint64_t> words) {
    Hash128 h = hash128(seed, words);
    std::seed_seq seq{static_cast<std::uint32_t>(h.lo), static_cast<std::uint32_t>(h.lo >> 32),
                      static_cast<std::uint32_t>(h.hi), static_cast<std::uint32_t>(h.hi >> 32)};
    return std::mt19937_64(seq);
}

}  // namespace moran
