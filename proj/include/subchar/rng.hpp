#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace subchar {

// splitmix64 finalizer, used to derive independent RNG streams from a base
// seed plus stream tags. Keeps results independent of worker scheduling.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) {
    std::uint64_t h = mix64(seed);
    for (std::uint64_t t : tags) h = mix64(h ^ t);
    return h;
}

inline std::mt19937_64 make_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) {
    return std::mt19937_64(mix_seed(seed, tags));
}

} // namespace subchar
