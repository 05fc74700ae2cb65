#pragma once
// xlr-gen: multiple-choice relation-reasoning items built from cycles.
//
// One item per cycle: one covering triple becomes the question ("What is the
// relation between {A} and {B}?"), the remaining triples become the context
// tuples, and the six choices are the cycle's relations topped up with
// distractors sampled from the relations incident to the two question
// entities (ordered by incidence count) and then from the global relation
// frequency pool. Choices are deduplicated by surface.
//
// The question-triple pick is derived from the cycle's canonical key, so the
// choice SET is stable across seeds; the seed only shuffles choice order.
// Non-English renderings preserve choice order and answer index so accuracy
// is comparable across languages.

#include <algorithm>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "kg2corpus/cycles.hpp"
#include "kg2corpus/rng.hpp"
#include "kg2corpus/store.hpp"

namespace kgc {

struct XlrItem {
    Key128 source_key;                 // cycle canonical key; doubles as item id
    CycleKind kind;
    Triple question_triple{};
    std::vector<Triple> context;       // covering minus the question triple
    std::vector<uint32_t> choice_rels; // exactly 6, shuffled
    uint32_t answer = 0;               // index into choice_rels
};

// Fully rendered single-language view of an item.
struct XlrRendered {
    std::string id;
    std::string lang;
    std::vector<std::string> context;  // "(h, r, t)" tuples
    std::string question;
    std::vector<std::string> choices;
    uint32_t answer = 0;
    std::string source_cycle_key;
};

struct XlrConfig {
    uint64_t train_size = 3000;
    uint64_t dev_size = 1000;
    uint64_t test_pool_size = 1050;
    std::string question_template = "What is the relation between {A} and {B}?";
    // per-language template overrides; absent languages use question_template
    std::unordered_map<std::string, std::string> templates_by_lang;
};

class XlrGen {
  public:
    XlrGen(const Store& store, XlrConfig config = {})
        : store_(&store), config_(std::move(config)) {
        auto en = store.lang_index("en");
        if (!en) throw input_error("store language set lacks \"en\"");
        en_ = *en;

        // global relation frequency pool, ordered by (count desc, index asc)
        global_counts_.assign(store.relations().size(), 0);
        for (const Triple& t : store.triples()) global_counts_[t.rel]++;
        global_order_.resize(store.relations().size());
        for (uint32_t i = 0; i < global_order_.size(); ++i) global_order_[i] = i;
        std::sort(global_order_.begin(), global_order_.end(), [&](uint32_t a, uint32_t b) {
            if (global_counts_[a] != global_counts_[b]) return global_counts_[a] > global_counts_[b];
            return a < b;
        });
    }

    const XlrConfig& config() const { return config_; }

    // Question pick is a pure function of the cycle key: uniform across
    // cycles, invariant across seeds.
    size_t question_index(const Cycle& cycle) const {
        Rng rng(derive_seed(cycle.key.lo, {seed_tag::xlr_item, cycle.key.hi}));
        return size_t(rng.below(cycle.covering.size()));
    }

    std::optional<XlrItem> build_item(const Cycle& cycle, uint8_t lang, uint64_t seed) const {
        return build_item_with_question(cycle, question_index(cycle), lang, seed);
    }

    std::optional<XlrItem> build_item_with_question(const Cycle& cycle, size_t q_index,
                                                    uint8_t lang, uint64_t seed) const {
        const Triple& q = cycle.covering[q_index];

        // choice set: cycle relations first (covering order), deduped by surface
        std::vector<uint32_t> choices;
        std::unordered_set<std::string_view> seen;
        auto add_choice = [&](uint32_t rel) -> bool {
            auto surface = store_->label({ItemKind::relation, rel}, lang, 0);
            if (!surface) return false;  // cannot even name it in this language
            if (seen.count(*surface)) return true;
            seen.insert(*surface);
            choices.push_back(rel);
            return true;
        };
        if (!add_choice(q.rel)) return std::nullopt;
        uint32_t answer_rel = q.rel;
        for (const Triple& t : cycle.covering)
            if (!add_choice(t.rel)) return std::nullopt;

        // distractors: relations incident to the two question entities,
        // ordered by incidence count, then the global frequency pool
        if (choices.size() < 6) {
            std::unordered_map<uint32_t, uint32_t> incident;
            for (uint32_t e : {q.head, q.tail})
                for (uint32_t nb : store_->neighbors(e))
                    for (const auto& er : store_->edge_rels(e, nb)) incident[er.rel]++;
            std::vector<std::pair<uint32_t, uint32_t>> ranked(incident.begin(), incident.end());
            std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
                if (a.second != b.second) return a.second > b.second;
                return a.first < b.first;
            });
            for (const auto& [rel, count] : ranked) {
                if (choices.size() >= 6) break;
                add_choice(rel);  // absent-surface distractors are simply skipped
            }
            for (uint32_t rel : global_order_) {
                if (choices.size() >= 6) break;
                add_choice(rel);
            }
        }
        if (choices.size() < 6) return std::nullopt;
        choices.resize(6);

        // seed shuffles order only
        Rng rng(derive_seed(seed, {seed_tag::xlr_item, cycle.key.hi, cycle.key.lo}));
        for (size_t i = 5; i > 0; --i)
            std::swap(choices[i], choices[rng.below(i + 1)]);

        XlrItem item;
        item.source_key = cycle.key;
        item.kind = cycle.kind;
        item.question_triple = q;
        for (size_t i = 0; i < cycle.covering.size(); ++i)
            if (i != q_index) item.context.push_back(cycle.covering[i]);
        item.choice_rels = std::move(choices);
        auto it = std::find(item.choice_rels.begin(), item.choice_rels.end(), answer_rel);
        item.answer = uint32_t(it - item.choice_rels.begin());
        return item;
    }

    // Render in one language; nullopt when any needed surface lacks a default
    // label or two choices collapse onto one surface.
    std::optional<XlrRendered> render(const XlrItem& item, uint8_t lang) const {
        XlrRendered out;
        out.id = item.source_key.hex();
        out.lang = store_->languages()[lang];
        out.answer = item.answer;
        out.source_cycle_key = item.source_key.hex();

        auto entity = [&](uint32_t e) { return store_->label({ItemKind::entity, e}, lang, 0); };
        auto relation = [&](uint32_t r) { return store_->label({ItemKind::relation, r}, lang, 0); };

        for (const Triple& t : item.context) {
            auto h = entity(t.head), r = relation(t.rel), tl = entity(t.tail);
            if (!h || !r || !tl) return std::nullopt;
            out.context.push_back("(" + std::string(*h) + ", " + std::string(*r) + ", " +
                                  std::string(*tl) + ")");
        }

        auto qa = entity(item.question_triple.head);
        auto qb = entity(item.question_triple.tail);
        if (!qa || !qb) return std::nullopt;
        std::string tmpl = config_.question_template;
        auto ov = config_.templates_by_lang.find(out.lang);
        if (ov != config_.templates_by_lang.end()) tmpl = ov->second;
        out.question = instantiate(tmpl, *qa, *qb);

        std::unordered_set<std::string_view> seen;
        for (uint32_t rel : item.choice_rels) {
            auto s = relation(rel);
            if (!s) return std::nullopt;
            if (!seen.insert(*s).second) return std::nullopt;  // surface collision in this language
            out.choices.emplace_back(*s);
        }
        return out;
    }

  private:
    static std::string instantiate(std::string_view tmpl, std::string_view a, std::string_view b) {
        std::string out;
        out.reserve(tmpl.size() + a.size() + b.size());
        for (size_t i = 0; i < tmpl.size();) {
            if (tmpl.compare(i, 3, "{A}") == 0) {
                out += a;
                i += 3;
            } else if (tmpl.compare(i, 3, "{B}") == 0) {
                out += b;
                i += 3;
            } else {
                out += tmpl[i++];
            }
        }
        return out;
    }

    const Store* store_;
    XlrConfig config_;
    uint8_t en_ = 0;
    std::vector<uint32_t> global_counts_;
    std::vector<uint32_t> global_order_;
};

// Greedy balanced selection. Pool is shuffled by seed, then each split is
// filled by repeatedly taking, from a bounded scan window, the candidate
// whose acceptance minimizes (answer-slot count, answer-relation count, max
// question-entity count) lexicographically. Emitted splits keep answer slots
// within 5% of uniform or fail loudly.
struct BalanceResult {
    std::vector<XlrItem> splits[2];  // train, dev
};

inline BalanceResult balance_split(std::vector<XlrItem> pool, uint64_t train_size,
                                   uint64_t dev_size, uint64_t seed) {
    if (pool.size() < train_size + dev_size)
        throw input_error("balance_split: pool has " + std::to_string(pool.size()) +
                          " items, need " + std::to_string(train_size + dev_size) +
                          " (achievable: " + std::to_string(pool.size()) + ")");

    Rng rng(derive_seed(seed, {seed_tag::xlr_split}));
    for (size_t i = pool.size() - 1; i > 0; --i)
        std::swap(pool[i], pool[rng.below(i + 1)]);

    constexpr size_t SCAN_WINDOW = 4096;
    BalanceResult result;
    std::vector<XlrItem> remaining = std::move(pool);

    const uint64_t sizes[2] = {train_size, dev_size};
    for (int split = 0; split < 2; ++split) {
        uint64_t want = sizes[split];
        std::vector<uint64_t> slot_count(6, 0);
        std::unordered_map<uint32_t, uint64_t> rel_count;
        std::unordered_map<uint32_t, uint64_t> entity_count;

        auto& out = result.splits[split];
        out.reserve(want);
        while (out.size() < want) {
            size_t best = SIZE_MAX;
            std::array<uint64_t, 3> best_key{};
            size_t scan = std::min(SCAN_WINDOW, remaining.size());
            for (size_t i = 0; i < scan; ++i) {
                const XlrItem& it = remaining[i];
                uint32_t arel = it.choice_rels[it.answer];
                std::array<uint64_t, 3> key = {
                    slot_count[it.answer] + 1, rel_count[arel] + 1,
                    std::max(entity_count[it.question_triple.head],
                             entity_count[it.question_triple.tail]) + 1};
                if (best == SIZE_MAX || key < best_key) {
                    best = i;
                    best_key = key;
                }
            }
            const XlrItem& chosen = remaining[best];
            slot_count[chosen.answer]++;
            rel_count[chosen.choice_rels[chosen.answer]]++;
            entity_count[chosen.question_triple.head]++;
            entity_count[chosen.question_triple.tail]++;
            out.push_back(chosen);
            remaining.erase(remaining.begin() + ptrdiff_t(best));
        }

        uint64_t max_slot = *std::max_element(slot_count.begin(), slot_count.end());
        uint64_t min_slot = *std::min_element(slot_count.begin(), slot_count.end());
        if ((max_slot - min_slot) * 100 > want * 5)
            throw input_error("balance_split: answer slots cannot be balanced within 5% "
                              "(spread " + std::to_string(max_slot - min_slot) + " over " +
                              std::to_string(want) + " items)");
    }
    return result;
}

// Blocked canonical keys from the test split; reasoning records whose source
// key is blocked never reach pretraining.
struct LeakageFilter {
    std::unordered_set<Key128, Key128Hash> blocked;

    bool allows(const Key128& key) const { return !blocked.contains(key); }
};

}  // namespace kgc
