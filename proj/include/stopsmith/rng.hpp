#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace stopsmith {

// Deterministic random stream. mt19937_64 output is pinned by the standard
// and uniform doubles are built from the top 53 bits directly, so the same
// seed yields the same draws on every platform and compiler. Substreams
// derived from (seed, k) back reproducible parallel work.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : Rng(seed, 0) {}

    Rng(std::uint64_t seed, std::uint64_t substream)
        : engine_(mix(mix(seed + kGolden) + (substream + 1) * kGolden)) {}

    static Rng stream(std::uint64_t seed, std::uint64_t substream) {
        return Rng(seed, substream);
    }

    std::uint64_t next() { return engine_(); }

    // Uniform on [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform on (0, 1]; safe to feed into log().
    double uniform_pos() {
        return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
    }

    // Exponential with the given rate (density rate*exp(-rate*x), mean 1/rate).
    double exponential(double rate) { return -std::log(uniform_pos()) / rate; }

    // Unbiased uniform integer in [0, n), n >= 1.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t threshold = (-n) % n;  // 2^64 mod n
        for (;;) {
            const std::uint64_t x = next();
            if (x >= threshold) return x % n;
        }
    }

private:
    static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

    // splitmix64 finalizer
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::mt19937_64 engine_;
};

}  // namespace stopsmith
