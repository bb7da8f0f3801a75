#pragma once

#include <cstdint>
#include <random>

namespace edgebandit {

// Deterministic random source. Every draw is built from raw mt19937_64 words
// with explicit conversions, so a given (seed, stream) pair yields the same
// sequence everywhere regardless of the standard library's distribution
// implementations. Single-owner: one source per consumer, never shared.
class SeededSource {
public:
    explicit SeededSource(std::uint64_t seed, std::uint64_t stream = 0);

    /// Uniform double in [0, 1) with 53 random bits.
    double next_unit();

    /// Standard normal draw (Box-Muller, cosine branch). Consumes exactly
    /// two engine words per call.
    double next_normal();

    /// Unbiased uniform integer in [0, n). Requires n >= 1.
    std::uint64_t next_below(std::uint64_t n);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
};

}  // namespace edgebandit
