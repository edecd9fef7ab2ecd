#pragma once

#include <cstdint>
#include <random>

namespace lgkac {

/// SplitMix64 output function, used to derive independent per-trial seeds.
constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Seed of the sub-stream for `trial` under the run seed `seed`. Depends only
/// on (seed, trial), so trial i draws the same numbers whatever order or
/// thread it runs on.
constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t trial) noexcept {
    return splitmix64(splitmix64(seed) ^ splitmix64(trial + 0x632be59bd9b4e019ull));
}

using Engine = std::mt19937_64;

inline Engine make_stream(std::uint64_t seed, std::uint64_t trial) {
    return Engine(stream_seed(seed, trial));
}

} // namespace lgkac
