#pragma once

#include <cstdint>
#include <random>

namespace fcir {

// SplitMix64 finalizer (Steele, Lea & Flood 2014).
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/*!
 * Seed of the noise stream for one path of an experiment.
 *
 * stream_seed(seed, i) = splitmix64(splitmix64(seed) + i). Every path draws its
 * noise from its own engine seeded with this value, so path i can be
 * regenerated without touching paths 0..i-1, and runs that share `seed`
 * (e.g. a sweep over the drift parameter) see identical noise per index.
 */
constexpr std::uint64_t stream_seed(std::uint64_t experiment_seed, std::uint64_t path_index) noexcept {
    return splitmix64(splitmix64(experiment_seed) + path_index);
}

using Engine = std::mt19937_64;

inline Engine make_engine(std::uint64_t experiment_seed, std::uint64_t path_index) {
    return Engine(stream_seed(experiment_seed, path_index));
}

}  // namespace fcir
