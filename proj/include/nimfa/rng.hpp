#pragma once

#include <cstdint>
#include <random>

namespace nimfa {

/// SplitMix64 (Steele, Lea, Flood 2014). Used to derive independent seeds.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t state) noexcept : state_(state) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

/// Random stream for experiments: std::mt19937_64 seeded through SplitMix64
/// from (seed, stream). Distinct stream ids give statistically independent
/// generators, so instances in a batch can be drawn in any order or in
/// parallel and still reproduce.
///
/// Variates are built directly from the 64-bit output (53-bit mantissa) so
/// that results do not depend on the standard library's distribution
/// implementations.
class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t stream) : engine_(derive(seed, stream)) {}

    /// Child stream; deterministic in (parent seed, parent stream, id).
    Rng split(std::uint64_t id) { return Rng(engine_(), id); }

    /// Uniform on [0, 1).
    double uniform01() noexcept {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform on [a, b).
    double uniform(double a, double b) noexcept { return a + (b - a) * uniform01(); }

    bool bernoulli(double p) noexcept { return uniform01() < p; }

private:
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) noexcept {
        SplitMix64 sm(seed);
        std::uint64_t s = sm.next();
        SplitMix64 mix(s ^ (stream * 0xD1B54A32D192ED03ULL));
        mix.next();
        return mix.next();
    }

    std::mt19937_64 engine_;
};

}  // namespace nimfa
