#pragma once

#include <cstdint>

// Deterministic random streams.
//
// Every random draw in the library comes from a SplitMix64 sequence whose
// starting state is derived from (master seed, purpose tag, realization,
// eps index, p index, trajectory index) by a fixed avalanche mix. The same
// inputs give the same draws on any platform, for any thread count and any
// task schedule. Uniform doubles are built from the top 53 bits directly;
// no std::*_distribution is used anywhere (their output is
// implementation-defined).

namespace dtc {

inline constexpr std::uint64_t kSeedGamma = 0x9e3779b97f4a7c15ULL;

// SplitMix64 finalizer. Constants are the standard ones from Vigna's
// splitmix64.c; they are part of the reproducibility contract.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Keeps streams for unrelated uses disjoint.
enum class StreamPurpose : std::uint64_t {
    disorder = 1,  // coupling draws; indexed by realization only
    noise = 2,     // trajectory Z-insertion patterns
    generic = 3,   // synthetic data in tests and tools
};

struct StreamKey {
    std::uint64_t master_seed = 0;
    StreamPurpose purpose = StreamPurpose::generic;
    std::uint64_t realization = 0;
    std::uint64_t eps_index = 0;
    std::uint64_t p_index = 0;
    std::uint64_t trajectory = 0;
};

// Word-by-word absorption: h <- mix64(h + gamma + word). Fixed arity so
// every implementation of the scheme agrees bit for bit.
constexpr std::uint64_t derive_seed(const StreamKey& key) {
    std::uint64_t h = key.master_seed;
    const std::uint64_t words[5] = {static_cast<std::uint64_t>(key.purpose), key.realization,
                                    key.eps_index, key.p_index, key.trajectory};
    for (std::uint64_t w : words) {
        h = mix64(h + kSeedGamma + w);
    }
    return h;
}

class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    explicit SplitMix64(const StreamKey& key) : state_(derive_seed(key)) {}

    std::uint64_t next_u64() {
        state_ += kSeedGamma;
        return mix64(state_);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    bool bernoulli(double p) { return next_double() < p; }

  private:
    std::uint64_t state_;
};

}  // namespace dtc
