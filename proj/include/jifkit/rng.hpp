#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace jifkit {

// splitmix64 (Steele, Lea & Flood): mixes a user seed and a stream id into
// an engine seed so distinct streams derived from one seed stay decorrelated.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Seeded random stream with pinned draw-to-value mappings.
//
// Engine: std::mt19937_64 (Mersenne Twister), whose raw 64-bit output is
// bit-identical across conforming platforms. The distribution mappings are
// implemented here rather than with std::*_distribution, whose algorithms
// the standard leaves unspecified:
//   uniform double:  top 53 bits scaled by 2^-53
//   bounded integer: 128-bit multiply-shift, exactly one draw
//   normal:          Box-Muller transform, exactly two draws, no caching
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t stream_id)
        : engine_(splitmix64(seed ^ splitmix64(stream_id))) {}

    std::uint64_t next_u64() { return engine_(); }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform in (0, 1]; safe as a log() argument
    double uniform_pos() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    // uniform integer in [lo, hi]
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        const auto scaled = static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * span) >> 64);
        return lo + static_cast<std::int64_t>(scaled);
    }

    double normal() {
        const double u1 = uniform_pos();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace jifkit
