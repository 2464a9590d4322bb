#pragma once

#include <array>
#include <cstdint>

namespace netbandit {

// Counter-based random number generation built on Philox4x64-10.
//
// Every draw is a pure function of (seed, replication, node, round, draw):
// there is no mutable generator state, so draws can be evaluated in any order
// (or in parallel) and always produce the same value.  The four coordinates
// form the Philox counter block and the seed forms the key, which keeps the
// streams of different replications/nodes/rounds statistically independent.
//
// The block function matches the canonical Philox4x64 with 10 rounds (the
// same function numpy.random.Philox evaluates), which gives us externally
// reproducible known-answer vectors.

namespace detail {

inline constexpr std::uint64_t kPhiloxM0 = 0xD2E7470EE14C6C93ull;
inline constexpr std::uint64_t kPhiloxM1 = 0xCA5A826395121157ull;
inline constexpr std::uint64_t kPhiloxW0 = 0x9E3779B97F4A7C15ull;
inline constexpr std::uint64_t kPhiloxW1 = 0xBB67AE8584CAA73Bull;

inline void philox_round(std::array<std::uint64_t, 4>& ctr, std::uint64_t k0,
                         std::uint64_t k1) {
    const unsigned __int128 p0 = static_cast<unsigned __int128>(kPhiloxM0) * ctr[0];
    const unsigned __int128 p1 = static_cast<unsigned __int128>(kPhiloxM1) * ctr[2];
    const std::uint64_t hi0 = static_cast<std::uint64_t>(p0 >> 64);
    const std::uint64_t lo0 = static_cast<std::uint64_t>(p0);
    const std::uint64_t hi1 = static_cast<std::uint64_t>(p1 >> 64);
    const std::uint64_t lo1 = static_cast<std::uint64_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ k0, lo1, hi0 ^ ctr[3] ^ k1, lo0};
}

}  // namespace detail

// One Philox4x64-10 block: 4 output words from a 4-word counter and 2-word key.
inline std::array<std::uint64_t, 4> philox4x64_block(
    std::array<std::uint64_t, 4> counter, std::array<std::uint64_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += detail::kPhiloxW0;
            key[1] += detail::kPhiloxW1;
        }
        detail::philox_round(counter, key[0], key[1]);
    }
    return counter;
}

// A stateless stream handle: seed plus the four stream coordinates.
// draw index convention used by the simulation engine:
//   draw 0 - reward draws
//   draw 1 - action draws (uniform-random policy, FYL follower round 1)
struct RngStream {
    std::uint64_t seed = 0;
    std::uint64_t replication = 0;
    std::uint64_t node = 0;
    std::uint64_t round = 0;
    std::uint64_t draw = 0;

    // First word of the Philox block for these coordinates.
    std::uint64_t raw() const {
        return philox4x64_block({draw, round, node, replication}, {seed, 0})[0];
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform() const {
        return static_cast<double>(raw() >> 11) * 0x1.0p-53;
    }
};

}  // namespace netbandit
