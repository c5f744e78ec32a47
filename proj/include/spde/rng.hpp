#pragma once

#include <cstdint>

namespace spde::rng {

// Domain-separation constants for the three generator families and the
// replication protocol. Fixed forever: changing any of them changes every
// stream derived from a master seed.
inline constexpr std::uint64_t kArrivalDomain     = 0x9d5720876a21c1a5ULL;
inline constexpr std::uint64_t kSpectralDomain    = 0x3c6ef372fe94f82bULL;
inline constexpr std::uint64_t kGaussianDomain    = 0xbb67ae8584caa73bULL;
inline constexpr std::uint64_t kReplicationDomain = 0xa54ff53a5f1d36f1ULL;

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// SplitMix64 output function (Steele, Lea, Vigna).
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based stream: the k-th output is a pure function of
/// (seed, domain, k), so atoms can be generated in any order, in parallel,
/// or incrementally with bit-identical results. Equivalent to reading the
/// SplitMix64 sequence started at mix64(seed ^ domain) at position k.
class CounterStream {
public:
    CounterStream(std::uint64_t seed, std::uint64_t domain)
        : key_(mix64(seed ^ domain)) {}

    std::uint64_t bits(std::uint64_t counter) const {
        return mix64(key_ + (counter + 1) * kGolden);
    }

    // Uniform on the open interval (0,1): 53-bit grid offset by half a step.
    // Never returns 0 or 1, so logs and inverse CDFs are always finite.
    double open01(std::uint64_t counter) const {
        return (static_cast<double>(bits(counter) >> 11) + 0.5) * 0x1.0p-53;
    }

    // One uniformly random sign per counter.
    double sign(std::uint64_t counter) const {
        return (bits(counter) & 1u) ? 1.0 : -1.0;
    }

private:
    std::uint64_t key_;
};

// Master seed for replication j of an experiment with base seed `seed`.
inline std::uint64_t replication_seed(std::uint64_t seed, std::uint64_t j) {
    return CounterStream(seed, kReplicationDomain).bits(j);
}

}  // namespace spde::rng
