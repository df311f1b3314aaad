#pragma once

#include <cstdint>
#include <random>

namespace vocalis {

// splitmix64 step; used to spread user seeds over the full 64-bit space.
inline std::uint64_t split_mix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Derives an independent sub-seed from (master, stream). Streams indexed by
// replication or document number give reproducible results regardless of the
// order in which they are consumed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t s = master ^ (stream * 0xda942042e4dd58b5ull);
    std::uint64_t a = split_mix64(s);
    std::uint64_t b = split_mix64(s);
    return a ^ (b + 0x632be59bd9b4e019ull);
}

inline std::mt19937_64 stream_rng(std::uint64_t master, std::uint64_t stream) {
    return std::mt19937_64(derive_seed(master, stream));
}

// Unbiased uniform draw from {0, ..., n-1}. Hand-rolled so results do not
// depend on the standard library's std::uniform_int_distribution, which is
// implementation-defined.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    if (n <= 1) {
        return 0;
    }
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

} // namespace vocalis
