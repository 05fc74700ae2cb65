#pragma once
// Versioned binary snapshot of a Store. Downstream stages load this instead
// of re-parsing raw dumps. All integers little-endian; layout:
//
//   magic "KG2CSNAP" | u32 version
//   u32 lang_count   | lang codes (2 bytes each)
//   u32 entity_count | length-prefixed id strings
//   u32 rel_count    | length-prefixed id strings
//   u64 lexicon_entries | per entry: u64 key, u16 n, n length-prefixed strings
//   u64 triple_count | per triple: 3 x u32
//
// Writing is fully deterministic (lexicon entries sorted by key, triples in
// stored order), so identical ingests produce byte-identical snapshots.

#include <cstdint>
#include <fstream>
#include <string>

#include "kg2corpus/store.hpp"

namespace kgc {

namespace snap {

inline constexpr char MAGIC[8] = {'K', 'G', '2', 'C', 'S', 'N', 'A', 'P'};
inline constexpr uint32_t VERSION = 1;

inline void put_u16(std::ostream& out, uint16_t v) {
    char b[2] = {char(v), char(v >> 8)};
    out.write(b, 2);
}
inline void put_u32(std::ostream& out, uint32_t v) {
    char b[4];
    for (int i = 0; i < 4; ++i) b[i] = char(v >> (8 * i));
    out.write(b, 4);
}
inline void put_u64(std::ostream& out, uint64_t v) {
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = char(v >> (8 * i));
    out.write(b, 8);
}
inline void put_str(std::ostream& out, std::string_view s) {
    put_u32(out, uint32_t(s.size()));
    out.write(s.data(), std::streamsize(s.size()));
}

inline uint16_t get_u16(std::istream& in) {
    uint8_t b[2];
    in.read(reinterpret_cast<char*>(b), 2);
    return uint16_t(b[0] | (b[1] << 8));
}
inline uint32_t get_u32(std::istream& in) {
    uint8_t b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
    return v;
}
inline uint64_t get_u64(std::istream& in) {
    uint8_t b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
    return v;
}
inline std::string get_str(std::istream& in) {
    uint32_t len = get_u32(in);
    if (len > (1u << 24)) throw input_error("snapshot: string length out of range");
    std::string s(len, '\0');
    in.read(s.data(), len);
    return s;
}

}  // namespace snap

inline void save_snapshot(const Store& store, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw input_error("cannot write snapshot: " + path);

    out.write(snap::MAGIC, 8);
    snap::put_u32(out, snap::VERSION);

    snap::put_u32(out, uint32_t(store.languages().size()));
    for (const auto& l : store.languages()) out.write(l.data(), 2);

    snap::put_u32(out, uint32_t(store.entities().size()));
    for (uint32_t i = 0; i < store.entities().size(); ++i)
        snap::put_str(out, store.entities().id(i));

    snap::put_u32(out, uint32_t(store.relations().size()));
    for (uint32_t i = 0; i < store.relations().size(); ++i)
        snap::put_str(out, store.relations().id(i));

    auto keys = store.lexicon().sorted_keys();
    snap::put_u64(out, keys.size());
    for (uint64_t key : keys) {
        const auto& surfaces = store.lexicon().by_key(key);
        snap::put_u64(out, key);
        snap::put_u16(out, uint16_t(surfaces.size()));
        for (const auto& s : surfaces) snap::put_str(out, s);
    }

    snap::put_u64(out, store.triples().size());
    for (const Triple& t : store.triples()) {
        snap::put_u32(out, t.head);
        snap::put_u32(out, t.rel);
        snap::put_u32(out, t.tail);
    }
    if (!out) throw input_error("write failed: " + path);
}

inline Store load_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open snapshot: " + path);

    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, snap::MAGIC, 8) != 0)
        throw input_error("not a snapshot file: " + path);
    uint32_t version = snap::get_u32(in);
    if (version != snap::VERSION)
        throw input_error("unsupported snapshot version " + std::to_string(version) + ": " + path);

    StoreBuilder builder;
    uint32_t lang_count = snap::get_u32(in);
    std::vector<std::string> langs;
    for (uint32_t i = 0; i < lang_count; ++i) {
        char code[2];
        in.read(code, 2);
        langs.emplace_back(code, 2);
    }
    builder.set_languages(std::move(langs));

    uint32_t entity_count = snap::get_u32(in);
    for (uint32_t i = 0; i < entity_count; ++i) builder.add_entity(snap::get_str(in));
    uint32_t rel_count = snap::get_u32(in);
    for (uint32_t i = 0; i < rel_count; ++i) builder.add_relation(snap::get_str(in));

    uint64_t lex_count = snap::get_u64(in);
    for (uint64_t i = 0; i < lex_count; ++i) {
        uint64_t key = snap::get_u64(in);
        uint16_t n = snap::get_u16(in);
        std::vector<std::string> surfaces;
        surfaces.reserve(n);
        for (uint16_t j = 0; j < n; ++j) surfaces.push_back(snap::get_str(in));
        // surfaces were normalized before the save; install verbatim
        builder.install_surfaces(ItemKind(key >> 48), uint32_t((key >> 8) & 0xffffffffu),
                                 uint8_t(key & 0xff), std::move(surfaces));
    }

    uint64_t triple_count = snap::get_u64(in);
    for (uint64_t i = 0; i < triple_count; ++i) {
        uint32_t h = snap::get_u32(in);
        uint32_t r = snap::get_u32(in);
        uint32_t t = snap::get_u32(in);
        builder.add_triple_idx(h, r, t);
    }
    if (!in) throw input_error("truncated snapshot: " + path);

    return builder.build();
}

}  // namespace kgc
