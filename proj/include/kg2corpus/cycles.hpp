#pragma once
// cycle-extract: length-3 cycles and diagonal-constrained length-4 cycles
// over the undirected graph view.
//
// Enumeration:
//   len3   anchor on the smallest vertex a; for each neighbor b > a,
//          intersect adj(a) and adj(b) above b. Each triangle surfaces once.
//   len4   anchor on an edge {u, v} (the diagonal); every unordered pair
//          {a, d} of common neighbors closes the perimeter a-u-d-v. Each
//          (perimeter, diagonal) pair surfaces once; a 4-cycle with two
//          chords is emitted once per chord, with distinct covering sets.
//
// Canonical form: rotate/reflect so the smallest interned entity index comes
// first and its smaller cycle-neighbor second. The canonical key hashes
// (kind, entities, per-edge relation + stored direction, diagonal position),
// so it is invariant under rotation, reflection and triple direction, and
// distinct covering sets never collide structurally.
//
// Entities with undirected degree above the cap contribute no cycles; the
// count of capped entities is reported. Per-edge parallel relations either
// take the first relation in (relation, lo->hi) order or fan out into one
// cycle per relation combination.

#include <algorithm>
#include <cstdint>
#include <mutex>
#include <optional>
#include <unordered_set>
#include <vector>

#include "kg2corpus/parallel.hpp"
#include "kg2corpus/sentence.hpp"
#include "kg2corpus/store.hpp"

namespace kgc {

enum class CycleKind : uint8_t { len3 = 0, len4_diagonal = 1 };

inline const char* cycle_kind_name(CycleKind k) {
    return k == CycleKind::len3 ? "len3" : "len4-diagonal";
}

struct Cycle {
    CycleKind kind;
    std::vector<uint32_t> entities;  // canonical order (3 or 4)
    std::vector<Triple> covering;    // perimeter edges in canonical order, diagonal last
    uint8_t diag_pos = 0;            // len4: 0 -> diagonal {e0,e2}, 1 -> {e1,e3}
    Key128 key;
};

struct CycleOptions {
    uint32_t degree_cap = 1000;
    bool all_relation_combos = false;  // false: first relation per edge
    uint32_t threads = 0;              // 0 = hardware concurrency
};

struct CycleStats {
    uint64_t len3 = 0;
    uint64_t len4 = 0;
    uint64_t capped_entities = 0;
    uint64_t duplicates_removed = 0;
};

namespace detail {

// Key over the canonical form. Directions are encoded relative to the
// canonical edge orientation, never flipped in the stored triples.
inline Key128 cycle_key(CycleKind kind, std::span<const uint32_t> entities,
                        std::span<const Triple> covering, uint8_t diag_pos) {
    HashBuffer buf;
    buf.u8(uint8_t(kind));
    buf.u8(uint8_t(entities.size()));
    for (uint32_t e : entities) buf.u32(e);
    size_t n = entities.size();
    for (size_t i = 0; i < n; ++i) {
        uint32_t from = entities[i];
        const Triple& t = covering[i];
        buf.u32(t.rel);
        buf.u8(t.head == from ? 1 : 0);
    }
    if (kind == CycleKind::len4_diagonal) {
        buf.u8(diag_pos);
        const Triple& d = covering[4];
        buf.u32(d.rel);
        buf.u8(d.head == entities[diag_pos] ? 1 : 0);
    }
    return buf.digest();
}

inline Cycle make_len3(uint32_t a, uint32_t b, uint32_t c, const Triple& tab, const Triple& tbc,
                       const Triple& tca) {
    // a < b < c by construction of the enumerator; for the generic path
    // (tests feeding arbitrary orderings) sort and rebind the edge triples.
    Cycle cy;
    cy.kind = CycleKind::len3;
    cy.entities = {a, b, c};
    std::sort(cy.entities.begin(), cy.entities.end());

    auto edge_of = [&](uint32_t x, uint32_t y) -> const Triple& {
        auto on = [&](const Triple& t) {
            return (t.head == x && t.tail == y) || (t.head == y && t.tail == x);
        };
        if (on(tab)) return tab;
        if (on(tbc)) return tbc;
        return tca;
    };
    cy.covering = {edge_of(cy.entities[0], cy.entities[1]),
                   edge_of(cy.entities[1], cy.entities[2]),
                   edge_of(cy.entities[2], cy.entities[0])};
    cy.key = cycle_key(cy.kind, cy.entities, cy.covering, 0);
    return cy;
}

inline Cycle make_len4(const std::array<uint32_t, 4>& perimeter,
                       const std::array<Triple, 4>& perimeter_triples, const Triple& diagonal) {
    // canonical rotation/reflection: smallest entity first, smaller
    // cycle-neighbor second
    int m = 0;
    for (int i = 1; i < 4; ++i)
        if (perimeter[i] < perimeter[m]) m = i;
    int step = perimeter[(m + 1) & 3] < perimeter[(m + 3) & 3] ? 1 : 3;

    Cycle cy;
    cy.kind = CycleKind::len4_diagonal;
    cy.entities.resize(4);
    for (int k = 0; k < 4; ++k) cy.entities[k] = perimeter[(m + step * k) & 3];

    auto triple_on = [&](uint32_t x, uint32_t y) -> const Triple& {
        for (const Triple& t : perimeter_triples)
            if ((t.head == x && t.tail == y) || (t.head == y && t.tail == x)) return t;
        return diagonal;  // unreachable for perimeter pairs
    };
    cy.covering = {triple_on(cy.entities[0], cy.entities[1]),
                   triple_on(cy.entities[1], cy.entities[2]),
                   triple_on(cy.entities[2], cy.entities[3]),
                   triple_on(cy.entities[3], cy.entities[0])};
    bool diag02 = (diagonal.head == cy.entities[0] || diagonal.tail == cy.entities[0]);
    cy.diag_pos = diag02 ? 0 : 1;
    cy.covering.push_back(diagonal);
    cy.key = cycle_key(cy.kind, cy.entities, cy.covering, cy.diag_pos);
    return cy;
}

// All relation choices for a set of edges, honoring the per-edge cap.
// visit(triples) is called once per combination.
template <typename Visit>
void edge_combos(const Store& store, std::span<const std::pair<uint32_t, uint32_t>> edges,
                 bool all_combos, Visit&& visit) {
    size_t n = edges.size();
    std::vector<std::span<const Store::EdgeRel>> lists(n);
    for (size_t i = 0; i < n; ++i) {
        lists[i] = store.edge_rels(edges[i].first, edges[i].second);
        if (lists[i].empty()) return;  // not an edge; caller guarantees it is
    }
    std::vector<Triple> triples(n);
    if (!all_combos) {
        for (size_t i = 0; i < n; ++i)
            triples[i] = store.edge_triple(edges[i].first, edges[i].second, lists[i][0]);
        visit(std::span<const Triple>(triples));
        return;
    }
    std::vector<size_t> pick(n, 0);
    for (;;) {
        for (size_t i = 0; i < n; ++i)
            triples[i] = store.edge_triple(edges[i].first, edges[i].second, lists[i][pick[i]]);
        visit(std::span<const Triple>(triples));
        size_t i = 0;
        while (i < n && ++pick[i] == lists[i].size()) pick[i++] = 0;
        if (i == n) break;
    }
}

inline std::vector<char> capped_mask(const Store& store, uint32_t degree_cap, uint64_t* capped) {
    size_t n = store.entities().size();
    std::vector<char> mask(n, 0);
    uint64_t count = 0;
    for (size_t e = 0; e < n; ++e) {
        if (store.degree(uint32_t(e)) > degree_cap) {
            mask[e] = 1;
            ++count;
        }
    }
    if (capped) *capped = count;
    return mask;
}

}  // namespace detail

// Enumerates length-3 cycles into per-worker sinks: sink(worker, Cycle&&).
template <typename Sink>
void for_each_len3(const Store& store, const CycleOptions& opt, uint64_t* capped_out, Sink&& sink) {
    auto capped = detail::capped_mask(store, opt.degree_cap, capped_out);
    size_t n = store.entities().size();

    parallel_blocks(0, n, opt.threads, 1024, [&](uint32_t worker, uint64_t lo, uint64_t hi) {
        std::vector<uint32_t> commons;
        for (uint64_t ai = lo; ai < hi; ++ai) {
            uint32_t a = uint32_t(ai);
            if (capped[a]) continue;
            auto na = store.neighbors(a);
            for (uint32_t b : na) {
                if (b <= a || capped[b]) continue;
                // c > b adjacent to both a and b
                auto nb = store.neighbors(b);
                commons.clear();
                auto ia = std::lower_bound(na.begin(), na.end(), b + 1);
                auto ib = std::lower_bound(nb.begin(), nb.end(), b + 1);
                while (ia != na.end() && ib != nb.end()) {
                    if (*ia < *ib) ++ia;
                    else if (*ib < *ia) ++ib;
                    else {
                        if (!capped[*ia]) commons.push_back(*ia);
                        ++ia, ++ib;
                    }
                }
                for (uint32_t c : commons) {
                    std::pair<uint32_t, uint32_t> edges[3] = {{a, b}, {b, c}, {c, a}};
                    detail::edge_combos(store, edges, opt.all_relation_combos,
                                        [&](std::span<const Triple> t) {
                                            sink(worker, detail::make_len3(a, b, c, t[0], t[1], t[2]));
                                        });
                }
            }
        }
    });
}

// Enumerates diagonal-constrained length-4 cycles: sink(worker, Cycle&&).
template <typename Sink>
void for_each_len4(const Store& store, const CycleOptions& opt, uint64_t* capped_out, Sink&& sink) {
    auto capped = detail::capped_mask(store, opt.degree_cap, capped_out);
    size_t n = store.entities().size();

    // anchor on the smaller endpoint of the diagonal edge
    parallel_blocks(0, n, opt.threads, 512, [&](uint32_t worker, uint64_t lo, uint64_t hi) {
        std::vector<uint32_t> commons;
        for (uint64_t ui = lo; ui < hi; ++ui) {
            uint32_t u = uint32_t(ui);
            if (capped[u]) continue;
            auto nu = store.neighbors(u);
            for (uint32_t v : nu) {
                if (v <= u || capped[v]) continue;
                auto nv = store.neighbors(v);
                commons.clear();
                auto iu = nu.begin();
                auto iv = nv.begin();
                while (iu != nu.end() && iv != nv.end()) {
                    if (*iu < *iv) ++iu;
                    else if (*iv < *iu) ++iv;
                    else {
                        if (!capped[*iu]) commons.push_back(*iu);
                        ++iu, ++iv;
                    }
                }
                for (size_t i = 0; i < commons.size(); ++i) {
                    for (size_t j = i + 1; j < commons.size(); ++j) {
                        uint32_t a = commons[i], d = commons[j];
                        std::pair<uint32_t, uint32_t> edges[5] = {
                            {a, u}, {u, d}, {d, v}, {v, a}, {u, v}};
                        detail::edge_combos(
                            store, edges, opt.all_relation_combos, [&](std::span<const Triple> t) {
                                sink(worker, detail::make_len4({a, u, d, v}, {t[0], t[1], t[2], t[3]},
                                                               t[4]));
                            });
                    }
                }
            }
        }
    });
}

// Full extraction: enumerate, merge worker outputs, dedup by canonical key,
// return sorted by key so output order is scheduling-independent.
inline std::vector<Cycle> extract_cycles(const Store& store, CycleKind kind,
                                         const CycleOptions& opt, CycleStats* stats = nullptr) {
    uint32_t threads = effective_threads(opt.threads);
    std::vector<std::vector<Cycle>> locals(threads);
    uint64_t capped = 0;
    auto sink = [&](uint32_t worker, Cycle&& cy) { locals[worker].push_back(std::move(cy)); };
    if (kind == CycleKind::len3)
        for_each_len3(store, opt, &capped, sink);
    else
        for_each_len4(store, opt, &capped, sink);

    size_t total = 0;
    for (const auto& l : locals) total += l.size();
    std::vector<Cycle> all;
    all.reserve(total);
    for (auto& l : locals) {
        std::move(l.begin(), l.end(), std::back_inserter(all));
        l.clear();
        l.shrink_to_fit();
    }

    std::sort(all.begin(), all.end(), [](const Cycle& x, const Cycle& y) { return x.key < y.key; });
    size_t before = all.size();
    all.erase(std::unique(all.begin(), all.end(),
                          [](const Cycle& x, const Cycle& y) { return x.key == y.key; }),
              all.end());

    if (stats) {
        stats->capped_entities = capped;
        stats->duplicates_removed += before - all.size();
        (kind == CycleKind::len3 ? stats->len3 : stats->len4) += all.size();
    }
    return all;
}

// One monolingual reasoning sample per cycle: one sentence per covering
// triple, perimeter order then diagonal. Absent when any triple lacks a
// default label in the language.
struct ReasoningSample {
    CycleKind kind;
    uint8_t lang;
    Key128 key;
    std::vector<SyntheticSentence> sentences;
};

inline std::optional<ReasoningSample> render_reasoning(const SentenceGen& gen, const Cycle& cycle,
                                                       uint8_t lang) {
    ReasoningSample out;
    out.kind = cycle.kind;
    out.lang = lang;
    out.key = cycle.key;
    out.sentences.reserve(cycle.covering.size());
    for (const Triple& t : cycle.covering) {
        auto s = gen.parallel_defaults(t, lang);
        if (!s) return std::nullopt;
        out.sentences.push_back(std::move(*s));
    }
    return out;
}

// Distinct relation multisets per cycle kind (stats report rows).
class CombinationCounter {
  public:
    void add(const Cycle& cy) {
        std::vector<uint32_t> rels;
        rels.reserve(cy.covering.size());
        for (const Triple& t : cy.covering) rels.push_back(t.rel);
        std::sort(rels.begin(), rels.end());
        HashBuffer buf;
        for (uint32_t r : rels) buf.u32(r);
        (cy.kind == CycleKind::len3 ? len3_ : len4_).insert(buf.digest());
    }

    uint64_t unique_len3() const { return len3_.size(); }
    uint64_t unique_len4() const { return len4_.size(); }

  private:
    std::unordered_set<Key128, Key128Hash> len3_;
    std::unordered_set<Key128, Key128Hash> len4_;
};

}  // namespace kgc
