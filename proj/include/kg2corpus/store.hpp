#pragma once
// kg-store: interned multilingual knowledge graph.
//
// Layout after build():
//   entity/relation interners   string id <-> dense uint32, bijective
//   lexicon                     (kind, idx, lang) -> [label, alias...]
//   triples                     sorted unique (head, rel, tail)
//   adjacency                   CSR over the undirected view, multi-edges
//                               collapsed, neighbor lists sorted by index
//   edge index                  unordered pair -> [(relation, direction)]
//
// The store is immutable after build() and safe for concurrent reads.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kg2corpus/common.hpp"

namespace kgc {

class Interner {
  public:
    uint32_t intern(std::string id) {
        auto it = index_.find(id);
        if (it != index_.end()) return it->second;
        uint32_t idx = uint32_t(ids_.size());
        index_.emplace(id, idx);
        ids_.push_back(std::move(id));
        return idx;
    }

    std::optional<uint32_t> find(std::string_view id) const {
        auto it = index_.find(std::string(id));
        return it == index_.end() ? std::nullopt : std::optional<uint32_t>(it->second);
    }

    const std::string& id(uint32_t idx) const { return ids_[idx]; }
    size_t size() const { return ids_.size(); }

  private:
    std::vector<std::string> ids_;
    std::unordered_map<std::string, uint32_t> index_;
};

// Surface strings per (item, language). Index 0 is the default label,
// indices >= 1 are aliases. A (item, language) entry exists iff it has a
// default label.
class Lexicon {
  public:
    static uint64_t key(ItemKind kind, uint32_t idx, uint8_t lang) {
        return (uint64_t(kind) << 48) | (uint64_t(idx) << 8) | lang;
    }

    void set(ItemKind kind, uint32_t idx, uint8_t lang, std::vector<std::string> surfaces) {
        entries_[key(kind, idx, lang)] = std::move(surfaces);
    }

    std::span<const std::string> surfaces(ItemKind kind, uint32_t idx, uint8_t lang) const {
        auto it = entries_.find(key(kind, idx, lang));
        if (it == entries_.end()) return {};
        return it->second;
    }

    std::optional<std::string_view> surface(ItemKind kind, uint32_t idx, uint8_t lang,
                                            uint32_t alias_index) const {
        auto list = surfaces(kind, idx, lang);
        if (alias_index >= list.size()) return std::nullopt;
        return std::string_view(list[alias_index]);
    }

    size_t entry_count() const { return entries_.size(); }

    // Deterministic iteration for serialization.
    std::vector<uint64_t> sorted_keys() const {
        std::vector<uint64_t> keys;
        keys.reserve(entries_.size());
        for (const auto& [k, v] : entries_) keys.push_back(k);
        std::sort(keys.begin(), keys.end());
        return keys;
    }

    const std::vector<std::string>& by_key(uint64_t k) const { return entries_.at(k); }

  private:
    std::unordered_map<uint64_t, std::vector<std::string>> entries_;
};

// Relation on an undirected edge, direction expressed relative to a query
// pair (a, b).
struct RelDir {
    uint32_t rel;
    bool a_to_b;

    friend bool operator==(const RelDir&, const RelDir&) = default;
};

struct IngestReport {
    uint64_t entities = 0;
    uint64_t relations = 0;
    uint64_t languages = 0;
    uint64_t lexicon_entries = 0;

    uint64_t triple_lines = 0;
    uint64_t triples_stored = 0;
    uint64_t duplicate_triples = 0;
    uint64_t self_loops_dropped = 0;
    uint64_t unknown_item_drops = 0;

    uint64_t aliases_truncated = 0;
    uint64_t empty_surfaces_dropped = 0;
    uint64_t duplicate_surfaces_dropped = 0;
    uint64_t empty_label_entries_dropped = 0;

    // triple_lines = stored + duplicates + self-loops + unknown-item drops
    bool conserved() const {
        return triple_lines ==
               triples_stored + duplicate_triples + self_loops_dropped + unknown_item_drops;
    }
};

class Store {
  public:
    friend class StoreBuilder;

    const Interner& entities() const { return entities_; }
    const Interner& relations() const { return relations_; }
    const Lexicon& lexicon() const { return lexicon_; }
    const std::vector<std::string>& languages() const { return languages_; }
    std::span<const Triple> triples() const { return triples_; }

    std::optional<uint8_t> lang_index(std::string_view code) const {
        for (size_t i = 0; i < languages_.size(); ++i)
            if (languages_[i] == code) return uint8_t(i);
        return std::nullopt;
    }

    std::optional<std::string_view> label(ItemRef item, uint8_t lang, uint32_t alias_index) const {
        return lexicon_.surface(item.kind, item.idx, lang, alias_index);
    }

    std::span<const std::string> surfaces(ItemRef item, uint8_t lang) const {
        return lexicon_.surfaces(item.kind, item.idx, lang);
    }

    // label by string ids, for the CLI / external surface
    std::optional<std::string_view> label_by_id(std::string_view item_id, std::string_view lang,
                                                uint32_t alias_index) const {
        auto li = lang_index(lang);
        if (!li) return std::nullopt;
        if (auto e = entities_.find(item_id)) return label({ItemKind::entity, *e}, *li, alias_index);
        if (auto r = relations_.find(item_id)) return label({ItemKind::relation, *r}, *li, alias_index);
        return std::nullopt;
    }

    std::span<const uint32_t> neighbors(uint32_t entity) const {
        return {adj_neighbors_.data() + adj_offsets_[entity],
                adj_neighbors_.data() + adj_offsets_[entity + 1]};
    }

    std::span<const uint32_t> neighbors_by_id(std::string_view entity_id) const {
        auto e = entities_.find(entity_id);
        if (!e) throw input_error("unknown entity: " + std::string(entity_id));
        return neighbors(*e);
    }

    uint32_t degree(uint32_t entity) const {
        return adj_offsets_[entity + 1] - adj_offsets_[entity];
    }

    bool connected(uint32_t a, uint32_t b) const {
        auto nb = neighbors(a);
        return std::binary_search(nb.begin(), nb.end(), b);
    }

    // All relations stored on the unordered pair {a, b}, each tagged with its
    // direction relative to (a, b). Order: (relation index, a->b first).
    std::vector<RelDir> relations_between(uint32_t a, uint32_t b) const {
        std::vector<RelDir> out;
        for (const auto& er : edge_rels(a, b))
            out.push_back({er.rel, a < b ? er.lo_to_hi : !er.lo_to_hi});
        std::sort(out.begin(), out.end(), [](const RelDir& x, const RelDir& y) {
            return x.rel != y.rel ? x.rel < y.rel : x.a_to_b > y.a_to_b;
        });
        return out;
    }

    std::vector<RelDir> relations_between_ids(std::string_view a, std::string_view b) const {
        auto ea = entities_.find(a);
        if (!ea) throw input_error("unknown entity: " + std::string(a));
        auto eb = entities_.find(b);
        if (!eb) throw input_error("unknown entity: " + std::string(b));
        return relations_between(*ea, *eb);
    }

    // Relation list stored for an edge, in (relation, lo->hi first) order.
    // Reconstructs the covering triple for cycle extraction.
    struct EdgeRel {
        uint32_t rel;
        bool lo_to_hi;  // head is min(a, b)
    };

    std::span<const EdgeRel> edge_rels(uint32_t a, uint32_t b) const {
        uint64_t key = pair_key(a, b);
        auto it = std::lower_bound(edge_keys_.begin(), edge_keys_.end(), key);
        if (it == edge_keys_.end() || *it != key) return {};
        size_t i = size_t(it - edge_keys_.begin());
        return {edge_rel_list_.data() + edge_offsets_[i],
                edge_rel_list_.data() + edge_offsets_[i + 1]};
    }

    Triple edge_triple(uint32_t a, uint32_t b, const EdgeRel& er) const {
        uint32_t lo = std::min(a, b), hi = std::max(a, b);
        return er.lo_to_hi ? Triple{lo, er.rel, hi} : Triple{hi, er.rel, lo};
    }

    size_t edge_count() const { return edge_keys_.size(); }

  private:
    Interner entities_;
    Interner relations_;
    Lexicon lexicon_;
    std::vector<std::string> languages_;
    std::vector<Triple> triples_;

    std::vector<uint64_t> adj_offsets_;
    std::vector<uint32_t> adj_neighbors_;

    std::vector<uint64_t> edge_keys_;     // sorted pair keys
    std::vector<uint64_t> edge_offsets_;  // CSR into edge_rel_list_
    std::vector<EdgeRel> edge_rel_list_;
};

enum class OnMissingItem { drop, error };

class StoreBuilder {
  public:
    StoreBuilder() { languages_ = {"en"}; }

    void set_languages(std::vector<std::string> langs) {
        if (langs.empty()) throw input_error("language set must not be empty");
        bool has_en = false;
        for (const auto& l : langs) {
            if (!is_language_code(l))
                throw input_error("invalid language code: '" + l + "'");
            has_en |= l == "en";
        }
        if (!has_en) throw input_error("language set must contain \"en\"");
        languages_ = std::move(langs);
    }

    void set_max_aliases(uint32_t n) { max_aliases_ = n; }
    void set_on_missing(OnMissingItem m) { on_missing_ = m; }

    const std::vector<std::string>& languages() const { return languages_; }

    std::optional<uint8_t> lang_index(std::string_view code) const {
        for (size_t i = 0; i < languages_.size(); ++i)
            if (languages_[i] == code) return uint8_t(i);
        return std::nullopt;
    }

    uint32_t add_entity(std::string id) {
        if (id.empty()) throw input_error("empty entity id");
        return entities_.intern(std::move(id));
    }

    uint32_t add_relation(std::string id) {
        if (id.empty()) throw input_error("empty relation id");
        if (entities_.find(id))
            throw input_error("id used as both entity and relation: " + id);
        return relations_.intern(std::move(id));
    }

    // Installs surfaces for one (item, language). The label lands at index 0;
    // aliases follow in input order, normalized, deduplicated and capped at
    // max_aliases. An entry whose label normalizes to empty is dropped whole:
    // promoting an alias to label would silently change default-label
    // semantics.
    void set_surfaces(ItemKind kind, uint32_t idx, uint8_t lang, std::string_view label,
                      std::span<const std::string> aliases) {
        std::string norm_label = normalize_surface(label);
        if (norm_label.empty()) {
            report_.empty_label_entries_dropped++;
            return;
        }
        std::vector<std::string> list;
        list.reserve(aliases.size() + 1);
        list.push_back(std::move(norm_label));
        for (const auto& a : aliases) {
            std::string norm = normalize_surface(a);
            if (norm.empty()) {
                report_.empty_surfaces_dropped++;
                continue;
            }
            if (std::find(list.begin(), list.end(), norm) != list.end()) {
                report_.duplicate_surfaces_dropped++;
                continue;
            }
            if (list.size() >= size_t(max_aliases_) + 1) {
                report_.aliases_truncated++;
                continue;
            }
            list.push_back(std::move(norm));
        }
        lexicon_.set(kind, idx, lang, std::move(list));
    }

    // Pre-normalized surface list (snapshot load); bypasses validation.
    void install_surfaces(ItemKind kind, uint32_t idx, uint8_t lang,
                          std::vector<std::string> surfaces) {
        lexicon_.set(kind, idx, lang, std::move(surfaces));
    }

    // Triple over already-interned indices (synthetic graphs, tests).
    void add_triple_idx(uint32_t head, uint32_t rel, uint32_t tail) {
        report_.triple_lines++;
        if (head == tail) {
            report_.self_loops_dropped++;
            return;
        }
        pending_.push_back({head, rel, tail});
    }

    // Triple over string ids; unknown ids follow the missing-item policy.
    void add_triple(std::string_view head_id, std::string_view rel_id, std::string_view tail_id) {
        report_.triple_lines++;
        auto h = entities_.find(head_id);
        auto r = relations_.find(rel_id);
        auto t = entities_.find(tail_id);
        if (!h || !r || !t) {
            if (on_missing_ == OnMissingItem::error) {
                std::string_view missing = !h ? head_id : (!r ? rel_id : tail_id);
                throw input_error("triple references item absent from lexicon: " +
                                  std::string(missing));
            }
            report_.unknown_item_drops++;
            return;
        }
        if (*h == *t) {
            report_.self_loops_dropped++;
            return;
        }
        pending_.push_back({*h, *r, *t});
    }

    Store build() {
        Store s;
        std::sort(pending_.begin(), pending_.end());
        std::vector<Triple> unique_triples;
        unique_triples.reserve(pending_.size());
        for (const Triple& t : pending_) {
            if (!unique_triples.empty() && unique_triples.back() == t) {
                report_.duplicate_triples++;
                continue;
            }
            unique_triples.push_back(t);
        }
        pending_.clear();
        pending_.shrink_to_fit();

        report_.triples_stored = unique_triples.size();
        report_.entities = entities_.size();
        report_.relations = relations_.size();
        report_.languages = languages_.size();
        report_.lexicon_entries = lexicon_.entry_count();

        s.entities_ = std::move(entities_);
        s.relations_ = std::move(relations_);
        s.lexicon_ = std::move(lexicon_);
        s.languages_ = std::move(languages_);
        s.triples_ = std::move(unique_triples);
        build_indexes(s);
        return s;
    }

    const IngestReport& report() const { return report_; }

    static void build_indexes(Store& s) {
        const size_t n = s.entities_.size();

        // undirected adjacency, multi-edges collapsed
        std::vector<std::pair<uint32_t, uint32_t>> arcs;
        arcs.reserve(s.triples_.size() * 2);
        for (const Triple& t : s.triples_) {
            arcs.emplace_back(t.head, t.tail);
            arcs.emplace_back(t.tail, t.head);
        }
        std::sort(arcs.begin(), arcs.end());
        arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());

        s.adj_offsets_.assign(n + 1, 0);
        for (const auto& [a, b] : arcs) s.adj_offsets_[a + 1]++;
        for (size_t i = 0; i < n; ++i) s.adj_offsets_[i + 1] += s.adj_offsets_[i];
        s.adj_neighbors_.resize(arcs.size());
        {
            size_t pos = 0;
            for (const auto& [a, b] : arcs) s.adj_neighbors_[pos++] = b;
        }

        // edge index: for each unordered pair, relation list in
        // (relation, lo->hi first) order
        struct Entry {
            uint64_t key;
            uint32_t rel;
            bool lo_to_hi;
        };
        std::vector<Entry> entries;
        entries.reserve(s.triples_.size());
        for (const Triple& t : s.triples_)
            entries.push_back({pair_key(t.head, t.tail), t.rel, t.head < t.tail});
        std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
            if (a.key != b.key) return a.key < b.key;
            if (a.rel != b.rel) return a.rel < b.rel;
            return a.lo_to_hi > b.lo_to_hi;
        });

        s.edge_keys_.clear();
        s.edge_offsets_.clear();
        s.edge_rel_list_.clear();
        for (size_t i = 0; i < entries.size(); ++i) {
            if (s.edge_keys_.empty() || s.edge_keys_.back() != entries[i].key) {
                s.edge_keys_.push_back(entries[i].key);
                s.edge_offsets_.push_back(s.edge_rel_list_.size());
            }
            s.edge_rel_list_.push_back({entries[i].rel, entries[i].lo_to_hi});
        }
        s.edge_offsets_.push_back(s.edge_rel_list_.size());
    }

  private:
    Interner entities_;
    Interner relations_;
    Lexicon lexicon_;
    std::vector<std::string> languages_;
    std::vector<Triple> pending_;
    uint32_t max_aliases_ = 16;
    OnMissingItem on_missing_ = OnMissingItem::drop;
    IngestReport report_;
};

}  // namespace kgc
