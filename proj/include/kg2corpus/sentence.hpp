#pragma once
// sentence-gen: triple -> "h [mask] r [mask] t." with span bookkeeping.
//
// Code-switched sentences follow the four-step recipe: resolve the English
// default labels, flip an independent coin per item, replace with the target
// language default label when the coin is true and the label exists, then
// render the template. Alias replacement swaps each item's rendered surface
// for a uniformly sampled surface (default label included in the pool) in
// the language the item ended up in.
//
// All byte offsets; tokens are joined with single ASCII spaces in every
// language, the terminal period attaches to the tail surface.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "kg2corpus/rng.hpp"
#include "kg2corpus/store.hpp"

namespace kgc {

enum class SpanRole : uint8_t { head = 0, relation = 1, tail = 2, link = 3 };

inline const char* span_role_name(SpanRole r) {
    switch (r) {
        case SpanRole::head: return "head";
        case SpanRole::relation: return "relation";
        case SpanRole::tail: return "tail";
        case SpanRole::link: return "link";
    }
    return "?";
}

struct Span {
    SpanRole role;
    uint32_t begin = 0;  // byte offsets into text
    uint32_t end = 0;
    uint8_t lang = 0;          // meaningless for link spans
    ItemRef item{ItemKind::entity, UINT32_MAX};
    uint32_t alias_index = 0;  // index into the (item, lang) surface list

    bool is_link() const { return role == SpanRole::link; }
};

enum class Variant : uint8_t {
    code_switched = 0,
    parallel = 1,
    alias_replaced_cs = 2,
    alias_replaced_parallel = 3,
};

inline const char* variant_name(Variant v) {
    switch (v) {
        case Variant::code_switched: return "code-switched";
        case Variant::parallel: return "parallel";
        case Variant::alias_replaced_cs: return "alias-replaced-cs";
        case Variant::alias_replaced_parallel: return "alias-replaced-parallel";
    }
    return "?";
}

struct Provenance {
    Triple triple{};
    uint8_t lang = 0;  // target language (code-switched) or render language (parallel)
    Variant variant = Variant::parallel;
    uint64_t seed = 0;
};

struct SyntheticSentence {
    std::string text;
    std::vector<Span> spans;  // head, link, relation, link, tail
    Provenance prov;
};

// Per-item outcome of the code-switch coin plus the alias pick. alias_index
// is an absolute index into the chosen language's surface list (0 = default
// label) and is only consulted when aliases are requested.
struct CodeSwitchDraws {
    std::array<bool, 3> to_target{};       // head, relation, tail
    std::array<uint32_t, 3> alias_index{};
};

struct ParallelDraws {
    std::array<uint32_t, 3> alias_index{};
};

class SentenceGen {
  public:
    explicit SentenceGen(const Store& store, std::string mask_literal = "[mask]")
        : store_(&store), mask_literal_(std::move(mask_literal)) {
        auto en = store.lang_index("en");
        if (!en) throw input_error("store language set lacks \"en\"");
        en_ = *en;
    }

    const std::string& mask_literal() const { return mask_literal_; }
    uint8_t english() const { return en_; }

    // Deterministic core; the seed only lands in provenance.
    std::optional<SyntheticSentence> code_switched_with_draws(const Triple& triple,
                                                              uint8_t target_lang,
                                                              bool use_aliases,
                                                              const CodeSwitchDraws& draws,
                                                              uint64_t seed) const {
        std::array<ItemRef, 3> items = triple_items(triple);
        std::array<const std::string*, 3> surfaces{};
        std::array<uint8_t, 3> langs{};
        std::array<uint32_t, 3> alias{};

        for (int i = 0; i < 3; ++i) {
            auto en_list = store_->surfaces(items[i], en_);
            if (en_list.empty()) return std::nullopt;  // no English default label

            uint8_t chosen = en_;
            if (draws.to_target[i] && !store_->surfaces(items[i], target_lang).empty())
                chosen = target_lang;

            auto list = store_->surfaces(items[i], chosen);
            uint32_t idx = use_aliases ? draws.alias_index[i] % uint32_t(list.size()) : 0;
            surfaces[i] = &list[idx];
            langs[i] = chosen;
            alias[i] = idx;
        }

        Provenance prov{triple, target_lang,
                        use_aliases ? Variant::alias_replaced_cs : Variant::code_switched, seed};
        return render(items, surfaces, langs, alias, prov);
    }

    // Seeded front: draw order is coin(head), coin(relation), coin(tail),
    // then alias(head), alias(relation), alias(tail).
    std::optional<SyntheticSentence> code_switched(const Triple& triple, uint8_t target_lang,
                                                   bool use_aliases, uint64_t seed) const {
        Rng rng(seed);
        CodeSwitchDraws draws;
        for (int i = 0; i < 3; ++i) draws.to_target[i] = rng.next_bool();
        if (use_aliases) {
            std::array<ItemRef, 3> items = triple_items(triple);
            for (int i = 0; i < 3; ++i) {
                uint8_t chosen = en_;
                if (draws.to_target[i] && !store_->surfaces(items[i], target_lang).empty())
                    chosen = target_lang;
                auto list = store_->surfaces(items[i], chosen);
                draws.alias_index[i] = list.empty() ? 0 : uint32_t(rng.below(list.size()));
            }
        }
        return code_switched_with_draws(triple, target_lang, use_aliases, draws, seed);
    }

    std::optional<SyntheticSentence> parallel_with_draws(const Triple& triple, uint8_t lang,
                                                         bool use_aliases,
                                                         const ParallelDraws& draws,
                                                         uint64_t seed) const {
        std::array<ItemRef, 3> items = triple_items(triple);
        std::array<const std::string*, 3> surfaces{};
        std::array<uint8_t, 3> langs{};
        std::array<uint32_t, 3> alias{};

        for (int i = 0; i < 3; ++i) {
            auto list = store_->surfaces(items[i], lang);
            if (list.empty()) return std::nullopt;  // no label in this language
            uint32_t idx = use_aliases ? draws.alias_index[i] % uint32_t(list.size()) : 0;
            surfaces[i] = &list[idx];
            langs[i] = lang;
            alias[i] = idx;
        }

        Provenance prov{triple, lang,
                        use_aliases ? Variant::alias_replaced_parallel : Variant::parallel, seed};
        return render(items, surfaces, langs, alias, prov);
    }

    std::optional<SyntheticSentence> parallel(const Triple& triple, uint8_t lang, bool use_aliases,
                                              uint64_t seed) const {
        Rng rng(seed);
        ParallelDraws draws;
        if (use_aliases) {
            std::array<ItemRef, 3> items = triple_items(triple);
            for (int i = 0; i < 3; ++i) {
                auto list = store_->surfaces(items[i], lang);
                draws.alias_index[i] = list.empty() ? 0 : uint32_t(rng.below(list.size()));
            }
        }
        return parallel_with_draws(triple, lang, use_aliases, draws, seed);
    }

    // Default-label monolingual rendering (reasoning samples, XLR contexts).
    std::optional<SyntheticSentence> parallel_defaults(const Triple& triple, uint8_t lang) const {
        return parallel_with_draws(triple, lang, false, {}, 0);
    }

  private:
    static std::array<ItemRef, 3> triple_items(const Triple& t) {
        return {ItemRef{ItemKind::entity, t.head}, ItemRef{ItemKind::relation, t.rel},
                ItemRef{ItemKind::entity, t.tail}};
    }

    SyntheticSentence render(const std::array<ItemRef, 3>& items,
                             const std::array<const std::string*, 3>& surfaces,
                             const std::array<uint8_t, 3>& langs,
                             const std::array<uint32_t, 3>& alias, const Provenance& prov) const {
        static constexpr SpanRole roles[3] = {SpanRole::head, SpanRole::relation, SpanRole::tail};
        SyntheticSentence out;
        out.prov = prov;
        out.text.reserve(surfaces[0]->size() + surfaces[1]->size() + surfaces[2]->size() +
                         2 * mask_literal_.size() + 5);
        for (int i = 0; i < 3; ++i) {
            if (i > 0) {
                out.text += ' ';
                Span link;
                link.role = SpanRole::link;
                link.begin = uint32_t(out.text.size());
                out.text += mask_literal_;
                link.end = uint32_t(out.text.size());
                out.spans.push_back(link);
                out.text += ' ';
            }
            Span span;
            span.role = roles[i];
            span.begin = uint32_t(out.text.size());
            out.text += *surfaces[i];
            span.end = uint32_t(out.text.size());
            span.lang = langs[i];
            span.item = items[i];
            span.alias_index = alias[i];
            out.spans.push_back(std::move(span));
        }
        out.text += '.';
        return out;
    }

    const Store* store_;
    std::string mask_literal_;
    uint8_t en_ = 0;
};

}  // namespace kgc
