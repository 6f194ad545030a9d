#pragma once

// Deterministic seed algebra shared by every generator in the library.
//
// Seeds are doubles in [-1, 1]. Before mixing they are quantised to a signed
// fixed-point integer with 2^-30 resolution, so the result of mix() depends
// only on integer arithmetic and is bit-identical on every IEEE-754 platform.
//
// Format contract: kSeedScale, kMixSalt, kGolden and the fmix64 constants
// below determine every generated map. Changing any of them changes all maps.

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>

namespace rivermap {

inline constexpr double kSeedScale = 1073741824.0;  // 2^30
inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
inline constexpr std::uint64_t kMixSalt = 0x632BE59BD9B4E019ULL;

/// 64-bit avalanche finalizer (MurmurHash3 fmix64).
constexpr std::uint64_t fmix64(std::uint64_t k) noexcept {
    k ^= k >> 33;
    k *= 0xFF51AFD7ED558CCDULL;
    k ^= k >> 33;
    k *= 0xC4CEB9FE1A85EC53ULL;
    k ^= k >> 33;
    return k;
}

/// Canonical fixed-point encoding of a seed, in [-2^30, 2^30].
inline std::int64_t encode_seed(double s) noexcept {
    assert(s >= -1.0 && s <= 1.0);
    return std::llround(s * kSeedScale);
}

/// Maps the top 53 bits of a hash affinely onto [-1, 1).
constexpr double hash_to_unit(std::uint64_t h) noexcept {
    return static_cast<double>(h >> 11) * 0x1.0p-52 - 1.0;
}

/// Symmetric mixing function: mix(a, b) == mix(b, a) bit for bit.
inline double mix(double a, double b) noexcept {
    const std::int64_t ea = encode_seed(a);
    const std::int64_t eb = encode_seed(b);
    // (a + b, a * b) is a symmetric pair; both fit in int64 (|a*b| <= 2^60).
    const auto sum = static_cast<std::uint64_t>(ea + eb);
    const auto prod = static_cast<std::uint64_t>(ea * eb);
    return hash_to_unit(fmix64(prod ^ fmix64(sum + kMixSalt)));
}

inline double self_mix(double s) noexcept { return mix(s, s); }

/// Seeded point between two altitudes, biased toward their midpoint:
/// (h1 + h2 + s^3 (h1 - h2)) / 2, kept inside [min(h1,h2), max(h1,h2)].
inline double between(double h1, double h2, double s) noexcept {
    assert(s >= -1.0 && s <= 1.0);
    const double r = (h1 + h2 + s * s * s * (h1 - h2)) / 2.0;
    // Rounding can overshoot the endpoints by an ulp when |s| == 1.
    return std::clamp(r, std::min(h1, h2), std::max(h1, h2));
}

/// Seed value in [-1, 1) derived from an explicit 64-bit key and a stream id.
constexpr double derive_unit(std::uint64_t key, std::uint64_t stream) noexcept {
    return hash_to_unit(fmix64(key ^ fmix64(stream * kGolden + kMixSalt)));
}

}  // namespace rivermap
