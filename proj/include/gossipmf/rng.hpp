#pragma once

#include <cstdint>

namespace gossipmf {

/// Seedable 64-bit generator (splitmix64). All simulators draw from this
/// stream only, through the helpers below, so trajectories are bit-stable
/// across platforms; std::random distributions are never used.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0,1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound). Bitmask rejection, unbiased.
    std::uint64_t uniform_below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        std::uint64_t mask = ~std::uint64_t{0} >> countl_zero(bound - 1);
        for (;;) {
            std::uint64_t v = next() & mask;
            if (v < bound) return v;
        }
    }

    /// Binomial(trials, p) by counting Bernoulli successes. O(trials), exact
    /// with respect to the uniform01 stream.
    long long binomial(long long trials, double p) {
        if (p <= 0.0) return 0;
        long long hits = 0;
        for (long long i = 0; i < trials; ++i)
            if (uniform01() < p) ++hits;
        return hits;
    }

private:
    static int countl_zero(std::uint64_t x) {
        int n = 0;
        for (std::uint64_t bit = std::uint64_t{1} << 63; bit != 0 && !(x & bit); bit >>= 1) ++n;
        return n;
    }

    std::uint64_t state_;
};

/// Child-seed rule for run-level parallelism: base XOR a fixed odd
/// multiplier times (run+1). Documented so other implementations can
/// reproduce run r of any experiment. The multiplier must differ from the
/// splitmix64 increment: seeds spaced by that increment sit one step apart
/// on the generator's state cycle and the runs replay overlapping streams.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t run) {
    return base ^ (0xC6A4A7935BD1E995ull * (run + 1));
}

}  // namespace gossipmf
