#pragma once
// Deterministic randomness. Every random decision in the pipeline flows from
// one 64-bit global seed through derive_seed(), so any record can be
// regenerated in isolation and generation parallelizes without changing
// output. No stage reads ambient entropy.

#include <cstdint>
#include <initializer_list>

#include "kg2corpus/hash.hpp"

namespace kgc {

// SplitMix64 generator. Small state, passes BigCrush, and trivially seedable
// from derived values.
class Rng {
  public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53-bit resolution.
    double next_double() { return double(next() >> 11) * 0x1.0p-53; }

    bool next_bool() { return (next() & 1) != 0; }

    bool chance(double p) { return next_double() < p; }

    // Uniform in [0, n). Rejection-free modulo bias is negligible for the
    // small n used here, but use Lemire reduction anyway.
    uint64_t below(uint64_t n) {
        if (n <= 1) return 0;
        unsigned __int128 m = (unsigned __int128)next() * n;
        return uint64_t(m >> 64);
    }

  private:
    uint64_t state_;
};

// Folds labelled parts into the global seed. Each stage documents its part
// tuple, e.g. (stream tag, triple index, language index) for sentence
// generation.
inline uint64_t derive_seed(uint64_t global_seed, std::initializer_list<uint64_t> parts) {
    uint64_t s = splitmix64(global_seed);
    for (uint64_t p : parts) s = splitmix64(s ^ p);
    return s;
}

// Stream tags for derive_seed, so different stages never share a substream.
namespace seed_tag {
inline constexpr uint64_t gen_code_switched = 0x6373;   // "cs"
inline constexpr uint64_t gen_parallel = 0x706c;        // "pl"
inline constexpr uint64_t mask_knowledge = 0x6d6b;      // "mk"
inline constexpr uint64_t mask_reasoning = 0x6d72;      // "mr"
inline constexpr uint64_t mix = 0x6d78;                 // "mx"
inline constexpr uint64_t xlr_item = 0x7871;            // "xq"
inline constexpr uint64_t xlr_split = 0x7873;           // "xs"
}  // namespace seed_tag

}  // namespace kgc
