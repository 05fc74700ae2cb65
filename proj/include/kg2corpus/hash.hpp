#pragma once
// 128-bit content hashing (MurmurHash3 x64_128) for canonical cycle keys and
// stage fingerprints, plus the SplitMix64 mixer used for seed derivation.
//
// Both are fixed algorithms with stable output across platforms and runs;
// canonical keys written by one build must match keys recomputed by another.

#include <cstdint>
#include <cstring>
#include <string>
#include <string_view>

namespace kgc {

struct Key128 {
    uint64_t hi = 0;
    uint64_t lo = 0;

    friend bool operator==(const Key128&, const Key128&) = default;
    friend auto operator<=>(const Key128&, const Key128&) = default;

    std::string hex() const {
        static const char* digits = "0123456789abcdef";
        std::string out(32, '0');
        for (int i = 0; i < 16; ++i) {
            uint64_t w = i < 8 ? hi : lo;
            int shift = 56 - 8 * (i % 8);
            uint8_t byte = uint8_t(w >> shift);
            out[2 * i] = digits[byte >> 4];
            out[2 * i + 1] = digits[byte & 0xf];
        }
        return out;
    }

    // Parses exactly 32 lowercase/uppercase hex chars; returns false otherwise.
    static bool parse(std::string_view s, Key128& out) {
        if (s.size() != 32) return false;
        uint64_t w[2] = {0, 0};
        for (int i = 0; i < 32; ++i) {
            char c = s[i];
            uint64_t v;
            if (c >= '0' && c <= '9') v = uint64_t(c - '0');
            else if (c >= 'a' && c <= 'f') v = uint64_t(c - 'a' + 10);
            else if (c >= 'A' && c <= 'F') v = uint64_t(c - 'A' + 10);
            else return false;
            w[i / 16] = (w[i / 16] << 4) | v;
        }
        out = {w[0], w[1]};
        return true;
    }
};

struct Key128Hash {
    size_t operator()(const Key128& k) const { return size_t(k.hi ^ (k.lo * 0x9e3779b97f4a7c15ULL)); }
};

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

namespace detail {

inline uint64_t rotl64(uint64_t x, int8_t r) { return (x << r) | (x >> (64 - r)); }

inline uint64_t fmix64(uint64_t k) {
    k ^= k >> 33;
    k *= 0xff51afd7ed558ccdULL;
    k ^= k >> 33;
    k *= 0xc4ceb9fe1a85ec53ULL;
    k ^= k >> 33;
    return k;
}

inline uint64_t load64le(const uint8_t* p) {
    uint64_t v;
    std::memcpy(&v, p, 8);
    return v;  // pipeline targets little-endian hosts; asserted in snapshot.hpp
}

}  // namespace detail

// MurmurHash3 x64 128-bit variant (Austin Appleby, public domain).
inline Key128 murmur3_128(const void* data, size_t len, uint64_t seed = 0) {
    const uint8_t* bytes = static_cast<const uint8_t*>(data);
    const size_t nblocks = len / 16;

    uint64_t h1 = seed, h2 = seed;
    const uint64_t c1 = 0x87c37b91114253d5ULL;
    const uint64_t c2 = 0x4cf5ad432745937fULL;

    for (size_t i = 0; i < nblocks; ++i) {
        uint64_t k1 = detail::load64le(bytes + i * 16);
        uint64_t k2 = detail::load64le(bytes + i * 16 + 8);
        k1 *= c1; k1 = detail::rotl64(k1, 31); k1 *= c2; h1 ^= k1;
        h1 = detail::rotl64(h1, 27); h1 += h2; h1 = h1 * 5 + 0x52dce729;
        k2 *= c2; k2 = detail::rotl64(k2, 33); k2 *= c1; h2 ^= k2;
        h2 = detail::rotl64(h2, 31); h2 += h1; h2 = h2 * 5 + 0x38495ab5;
    }

    const uint8_t* tail = bytes + nblocks * 16;
    uint64_t k1 = 0, k2 = 0;
    switch (len & 15) {
        case 15: k2 ^= uint64_t(tail[14]) << 48; [[fallthrough]];
        case 14: k2 ^= uint64_t(tail[13]) << 40; [[fallthrough]];
        case 13: k2 ^= uint64_t(tail[12]) << 32; [[fallthrough]];
        case 12: k2 ^= uint64_t(tail[11]) << 24; [[fallthrough]];
        case 11: k2 ^= uint64_t(tail[10]) << 16; [[fallthrough]];
        case 10: k2 ^= uint64_t(tail[9]) << 8; [[fallthrough]];
        case 9:
            k2 ^= uint64_t(tail[8]);
            k2 *= c2; k2 = detail::rotl64(k2, 33); k2 *= c1; h2 ^= k2;
            [[fallthrough]];
        case 8: k1 ^= uint64_t(tail[7]) << 56; [[fallthrough]];
        case 7: k1 ^= uint64_t(tail[6]) << 48; [[fallthrough]];
        case 6: k1 ^= uint64_t(tail[5]) << 40; [[fallthrough]];
        case 5: k1 ^= uint64_t(tail[4]) << 32; [[fallthrough]];
        case 4: k1 ^= uint64_t(tail[3]) << 24; [[fallthrough]];
        case 3: k1 ^= uint64_t(tail[2]) << 16; [[fallthrough]];
        case 2: k1 ^= uint64_t(tail[1]) << 8; [[fallthrough]];
        case 1:
            k1 ^= uint64_t(tail[0]);
            k1 *= c1; k1 = detail::rotl64(k1, 31); k1 *= c2; h1 ^= k1;
            break;
        case 0: break;
    }

    h1 ^= uint64_t(len);
    h2 ^= uint64_t(len);
    h1 += h2;
    h2 += h1;
    h1 = detail::fmix64(h1);
    h2 = detail::fmix64(h2);
    h1 += h2;
    h2 += h1;
    return {h1, h2};
}

inline Key128 murmur3_128(std::string_view s, uint64_t seed = 0) {
    return murmur3_128(s.data(), s.size(), seed);
}

// Byte-stream builder for hashing structured records field by field.
struct HashBuffer {
    std::string bytes;

    void u8(uint8_t v) { bytes.push_back(char(v)); }
    void u32(uint32_t v) {
        for (int i = 0; i < 4; ++i) bytes.push_back(char(v >> (8 * i)));
    }
    void u64(uint64_t v) {
        for (int i = 0; i < 8; ++i) bytes.push_back(char(v >> (8 * i)));
    }
    void str(std::string_view s) {
        u32(uint32_t(s.size()));
        bytes.append(s);
    }
    Key128 digest(uint64_t seed = 0) const { return murmur3_128(bytes, seed); }
};

}  // namespace kgc
