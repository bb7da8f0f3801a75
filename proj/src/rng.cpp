#include "edgebandit/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace edgebandit {

namespace {

constexpr double kInv53 = 0x1p-53;

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
    // seed_seq wants 32-bit words; split both inputs so no bits are lost.
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream),
                      static_cast<std::uint32_t>(stream >> 32)};
    return std::mt19937_64(seq);
}

}  // namespace

SeededSource::SeededSource(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), engine_(make_engine(seed, stream)) {}

double SeededSource::next_unit() {
    return static_cast<double>(engine_() >> 11) * kInv53;
}

double SeededSource::next_normal() {
    // u1 in (0, 1] keeps the log finite; u2 in [0, 1).
    const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * kInv53;
    const double u2 = static_cast<double>(engine_() >> 11) * kInv53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t SeededSource::next_below(std::uint64_t n) {
    if (n == 0) {
        throw std::invalid_argument("SeededSource::next_below: n must be >= 1");
    }
    // Rejection below 2^64 mod n keeps the result unbiased.
    const std::uint64_t reject_below = (0 - n) % n;
    std::uint64_t x = engine_();
    while (x < reject_below) {
        x = engine_();
    }
    return x % n;
}

}  // namespace edgebandit
