#pragma once

#include <cstdint>
#include <random>

namespace gridnet {

// Stateless 64-bit mixer (splitmix64 step). Also used as the finalizer for
// counter-based draws in the epidemic simulator.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Top 53 bits -> double in [0, 1).
inline double u64_to_unit(std::uint64_t x) {
    return static_cast<double>(x >> 11) * 0x1.0p-53;
}

// Seeded stream built on mt19937_64. The engine's output sequence is pinned
// by the standard, and doubles are derived from raw 64-bit words rather than
// std::uniform_real_distribution, so identical seeds give identical streams
// on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    double uniform01() { return u64_to_unit(eng_()); }

    // Unbiased integer in [0, n); n must be positive.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = eng_();
            if (r >= threshold) return r % n;
        }
    }

private:
    std::mt19937_64 eng_;
};

// Poisson count by the product method, chunked so exp(-mean) never
// underflows. O(mean) draws, which is fine for the sizes used here.
inline std::int64_t poisson_count(Rng& rng, double mean) {
    std::int64_t total = 0;
    while (mean > 0) {
        const double chunk = mean > 500.0 ? 500.0 : mean;
        const double limit = std::exp(-chunk);
        std::int64_t k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= rng.uniform01();
        } while (p > limit);
        total += k - 1;
        mean -= chunk;
    }
    return total;
}

// Deterministic per-trial seed derivation.
inline std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t trial_index) {
    return mix64(base_seed + (trial_index + 1) * 0x9e3779b97f4a7c15ULL);
}

// Counter-based uniform keyed by up to three indices. Used where a draw must
// be addressable by (who, whom, when) instead of by stream position.
inline double keyed_u01(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    std::uint64_t x = mix64(seed ^ 0x5851f42d4c957f2dULL);
    x = mix64(x + a);
    x = mix64(x + b);
    x = mix64(x + c);
    return u64_to_unit(x);
}

}  // namespace gridnet
