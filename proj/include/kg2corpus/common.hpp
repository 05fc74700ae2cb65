#pragma once
// Shared primitive types and error conventions for the corpus pipeline.
//
// Entities and relations are interned to dense uint32 indices; everything
// downstream (adjacency, cycles, seeds) works on indices. The opaque string
// ids ("Q1420", "P31") only appear at the ingest/serialization boundary.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kgc {

// Raised for malformed or inconsistent user input (files, config, CLI
// arguments). The CLI maps it to exit code 1; anything else is exit code 2.
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ItemKind : uint8_t { entity = 0, relation = 1 };

// Reference to an interned entity or relation.
struct ItemRef {
    ItemKind kind;
    uint32_t idx;

    friend bool operator==(const ItemRef&, const ItemRef&) = default;
};

// A stored fact, fully interned. head/tail index the entity table, rel the
// relation table. head != tail always holds (self-loops are dropped at
// ingest).
struct Triple {
    uint32_t head;
    uint32_t rel;
    uint32_t tail;

    friend bool operator==(const Triple&, const Triple&) = default;
    friend auto operator<=>(const Triple&, const Triple&) = default;
};

// Unordered entity pair packed into one key: (min << 32) | max.
inline uint64_t pair_key(uint32_t a, uint32_t b) {
    uint32_t lo = a < b ? a : b;
    uint32_t hi = a < b ? b : a;
    return (uint64_t(lo) << 32) | hi;
}

inline bool is_language_code(std::string_view s) {
    return s.size() == 2 && s[0] >= 'a' && s[0] <= 'z' && s[1] >= 'a' && s[1] <= 'z';
}

// Trim leading/trailing whitespace and collapse internal runs to one ASCII
// space. Surfaces are normalized this way at ingest so that token streams
// reconstruct the original text exactly when re-joined with single spaces.
inline std::string normalize_surface(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    bool pending_space = false;
    for (char c : raw) {
        bool ws = c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
        if (ws) {
            if (!out.empty()) pending_space = true;
        } else {
            if (pending_space) out.push_back(' ');
            pending_space = false;
            out.push_back(c);
        }
    }
    return out;
}

inline std::vector<std::string_view> split_tokens(std::string_view text) {
    std::vector<std::string_view> out;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t sp = text.find(' ', pos);
        if (sp == std::string_view::npos) sp = text.size();
        if (sp > pos) out.push_back(text.substr(pos, sp - pos));
        pos = sp + 1;
    }
    return out;
}

}  // namespace kgc
