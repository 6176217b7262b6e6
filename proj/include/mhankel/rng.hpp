#pragma once

// Counter-based deterministic random stream (splitmix64 output function at an
// arbitrary stream offset). draw k of a seed is a pure function of (seed, k),
// so chunked or parallel consumers reproduce the exact same values in any
// evaluation order. Not cryptographic.

#include <cstdint>

namespace mhankel::rng {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t mix64(std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t draw_u64(std::uint64_t seed, std::uint64_t counter) {
    return mix64(seed + (counter + 1) * kGolden);
}

// uniform in [0, 1) with 53 random bits
inline double draw_u01(std::uint64_t seed, std::uint64_t counter) {
    return (double)(draw_u64(seed, counter) >> 11) * 0x1.0p-53;
}

// uniform in [-1, 1)
inline double draw_symmetric(std::uint64_t seed, std::uint64_t counter) {
    return 2.0 * draw_u01(seed, counter) - 1.0;
}

// decorrelated sub-seed for a named lane (homogeneity level, trial index, ...)
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t lane) {
    return mix64(seed ^ mix64(lane + 1));
}

}  // namespace mhankel::rng
