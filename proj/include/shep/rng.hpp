#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace shep {

/// splitmix64 step; the usual seed-expansion workhorse.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministically derive an independent stream seed from a master seed,
/// a role label ("target", "init", ...) and an index.  All simulation
/// randomness flows through this so that (seed, config) pins every trace.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view role, std::uint64_t index) {
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a over the role label
    for (char c : role) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    std::uint64_t state = master;
    state ^= splitmix64(h);
    state ^= index * 0xd1342543de82ef95ULL;
    std::uint64_t s = state;
    return splitmix64(s);
}

inline std::mt19937_64 make_stream(std::uint64_t master, std::string_view role, std::uint64_t index) {
    return std::mt19937_64(derive_seed(master, role, index));
}

/// Uniform double in [0, 1) with 53 random bits, pinned to this exact
/// construction (std distributions are implementation-defined).
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform double in [lo, hi).
inline double uniform_in(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

} // namespace shep
