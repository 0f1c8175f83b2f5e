#pragma once

#include "rmap/types.hpp"

#include <cstdint>
#include <vector>

namespace rmap {

/// SplitMix64: 64-bit state, state += 0x9E3779B97F4A7C15 per draw, output
/// mixed by two xor-shift-multiply rounds.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) from the top 53 bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::uint64_t state_;
};

// Independent stream for one sampled point: SplitMix64 seeded with
// seed ^ (index * 0xD1B54A32D192ED03).
SplitMix64 point_stream(std::uint64_t seed, std::uint64_t index);

// Default sampling box: every interval shrunk about its center by `shrink`
// of its half-width.
std::vector<Interval> shrink_box(const std::vector<Interval>& box, double shrink = 0.1);

// `count` points drawn coordinate by coordinate, point by point, from one
// SplitMix64 stream seeded with `seed`.
std::vector<Vector> sample_box(const std::vector<Interval>& box, std::size_t count, std::uint64_t seed);

}  // namespace rmap
