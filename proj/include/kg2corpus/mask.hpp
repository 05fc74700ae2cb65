#pragma once
// mask-tasks: turn synthetic sentences and reasoning samples into masked
// training records with explicit loss masks.
//
// Tokenization is whitespace-level over the surface text; subword splitting
// is the trainer's concern. The two link slots are structural masks and
// never contribute loss. The terminal period is its own token and is never
// maskable.
//
// Tasks:
//   knowledge             independent per-token masking of the content
//                         tokens at mlm_probability, with a forced minimum
//                         for short sentences
//   reason-len3           exactly one relation span masked, never entities
//   reason-len4-partial   one relation span plus one-or-two entity span
//                         occurrences, whole spans
//   reason-len4-sentence  both entity spans of one sentence, its relation
//                         left visible

#include <optional>
#include <string>
#include <vector>

#include "kg2corpus/cycles.hpp"
#include "kg2corpus/rng.hpp"
#include "kg2corpus/sentence.hpp"

namespace kgc {

enum class TokenFlag : uint8_t { visible = 0, loss_masked = 1, structural = 2 };

enum class Task : uint8_t {
    knowledge = 0,
    reason_len3 = 1,
    reason_len4_partial = 2,
    reason_len4_sentence = 3,
};

inline const char* task_name(Task t) {
    switch (t) {
        case Task::knowledge: return "knowledge";
        case Task::reason_len3: return "reason-len3";
        case Task::reason_len4_partial: return "reason-len4-partial";
        case Task::reason_len4_sentence: return "reason-len4-sentence";
    }
    return "?";
}

inline std::optional<Task> task_from_name(std::string_view s) {
    if (s == "knowledge") return Task::knowledge;
    if (s == "reason-len3") return Task::reason_len3;
    if (s == "reason-len4-partial") return Task::reason_len4_partial;
    if (s == "reason-len4-sentence") return Task::reason_len4_sentence;
    return std::nullopt;
}

struct MaskConfig {
    double mlm_probability = 0.15;
    uint32_t min_masked_tokens = 1;      // forced picks when nothing was drawn
    double sentence_mask_fraction = 0.20;  // len4 sentence-mode branch
    double one_entity_prob = 0.5;        // len4 partial: one vs two entities
};

struct MaskedSample {
    std::vector<std::string> tokens;  // masked view
    std::vector<uint8_t> flags;       // TokenFlag per token
    std::vector<std::pair<uint32_t, std::string>> targets;  // (position, original)
    Task task = Task::knowledge;
    std::string provenance_id;
    uint64_t seed = 0;
};

namespace detail {

constexpr uint8_t ROLE_PERIOD = 4;

// Token-level view of one or more template sentences.
struct TokenStream {
    struct SpanTokens {
        uint32_t sentence;
        uint32_t begin, end;  // token index range
    };
    std::vector<std::string> tokens;
    std::vector<uint8_t> roles;                            // SpanRole values or ROLE_PERIOD
    std::vector<uint32_t> link_positions;
    std::vector<SpanTokens> relation_spans;                // one per sentence
    std::vector<SpanTokens> entity_spans;                  // two per sentence (head, tail)
    std::vector<std::pair<uint32_t, uint32_t>> sentences;  // token range per sentence
};

inline void validate_sentence(const SyntheticSentence& s) {
    if (s.spans.size() != 5)
        throw input_error("malformed sentence: expected 5 spans, got " +
                          std::to_string(s.spans.size()));
    static constexpr SpanRole expect[5] = {SpanRole::head, SpanRole::link, SpanRole::relation,
                                           SpanRole::link, SpanRole::tail};
    uint32_t pos = 0;
    for (int i = 0; i < 5; ++i) {
        if (s.spans[i].role != expect[i]) throw input_error("malformed sentence: span role order");
        if (s.spans[i].begin < pos || s.spans[i].end > s.text.size() ||
            s.spans[i].begin >= s.spans[i].end)
            throw input_error("malformed sentence: span ranges");
        pos = s.spans[i].end;
    }
}

inline TokenStream tokenize(std::span<const SyntheticSentence> sentences) {
    TokenStream ts;
    for (uint32_t si = 0; si < sentences.size(); ++si) {
        const SyntheticSentence& s = sentences[si];
        validate_sentence(s);
        uint32_t sent_begin = uint32_t(ts.tokens.size());
        for (const Span& span : s.spans) {
            std::string_view surface(s.text.data() + span.begin, span.end - span.begin);
            uint32_t begin = uint32_t(ts.tokens.size());
            if (span.is_link()) {
                ts.tokens.emplace_back(surface);
                ts.roles.push_back(uint8_t(span.role));
                ts.link_positions.push_back(begin);
                continue;
            }
            for (std::string_view tok : split_tokens(surface)) {
                ts.tokens.emplace_back(tok);
                ts.roles.push_back(uint8_t(span.role));
            }
            TokenStream::SpanTokens st{si, begin, uint32_t(ts.tokens.size())};
            if (span.role == SpanRole::relation) ts.relation_spans.push_back(st);
            else ts.entity_spans.push_back(st);
        }
        ts.tokens.emplace_back(".");
        ts.roles.push_back(ROLE_PERIOD);
        ts.sentences.emplace_back(sent_begin, uint32_t(ts.tokens.size()));
    }
    return ts;
}

inline MaskedSample finish(TokenStream&& ts, const std::vector<uint32_t>& loss_positions,
                           Task task, const std::string& mask_literal, std::string provenance_id,
                           uint64_t seed) {
    MaskedSample out;
    out.task = task;
    out.provenance_id = std::move(provenance_id);
    out.seed = seed;
    out.flags.assign(ts.tokens.size(), uint8_t(TokenFlag::visible));
    for (uint32_t p : ts.link_positions) out.flags[p] = uint8_t(TokenFlag::structural);
    out.tokens = std::move(ts.tokens);
    std::vector<uint32_t> sorted = loss_positions;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::logic_error("duplicate loss-mask position");
    for (uint32_t p : sorted) {
        out.targets.emplace_back(p, std::move(out.tokens[p]));
        out.tokens[p] = mask_literal;
        out.flags[p] = uint8_t(TokenFlag::loss_masked);
    }
    return out;
}

}  // namespace detail

// Knowledge-oriented masking over one sentence. Draw order: one Bernoulli
// per content token in stream order, then forced uniform picks while fewer
// than min_masked_tokens are selected.
inline MaskedSample mask_knowledge(const SyntheticSentence& sentence, const MaskConfig& config,
                                   uint64_t seed, const std::string& mask_literal = "[mask]",
                                   std::string provenance_id = {}) {
    auto ts = detail::tokenize({&sentence, 1});

    std::vector<uint32_t> content;
    for (uint32_t i = 0; i < ts.roles.size(); ++i)
        if (ts.roles[i] != uint8_t(SpanRole::link) && ts.roles[i] != detail::ROLE_PERIOD)
            content.push_back(i);

    Rng rng(seed);
    std::vector<uint32_t> picked;
    std::vector<char> is_picked(content.size(), 0);
    for (uint32_t i = 0; i < content.size(); ++i) {
        if (rng.chance(config.mlm_probability)) {
            picked.push_back(content[i]);
            is_picked[i] = 1;
        }
    }
    while (picked.size() < config.min_masked_tokens && picked.size() < content.size()) {
        uint32_t i = uint32_t(rng.below(content.size()));
        if (!is_picked[i]) {
            picked.push_back(content[i]);
            is_picked[i] = 1;
        }
    }

    return detail::finish(std::move(ts), picked, Task::knowledge, mask_literal,
                          std::move(provenance_id), seed);
}

// Length-3 rule: one relation span masked whole, entities untouched.
inline MaskedSample mask_reason_len3(const ReasoningSample& sample, uint64_t seed,
                                     const std::string& mask_literal = "[mask]",
                                     std::string provenance_id = {}) {
    if (sample.kind != CycleKind::len3)
        throw input_error("mask_reason_len3 requires a length-3 sample");
    auto ts = detail::tokenize(sample.sentences);

    Rng rng(seed);
    const auto& span = ts.relation_spans[rng.below(ts.relation_spans.size())];
    std::vector<uint32_t> picked;
    for (uint32_t p = span.begin; p < span.end; ++p) picked.push_back(p);

    return detail::finish(std::move(ts), picked, Task::reason_len3, mask_literal,
                          std::move(provenance_id), seed);
}

// Length-4 rule. Branch draw first: with probability sentence_mask_fraction
// mask both entity spans of one uniformly chosen sentence and keep its
// relation visible; otherwise mask one relation span plus one or two entity
// span occurrences at equal chance. Whole spans only.
inline MaskedSample mask_reason_len4(const ReasoningSample& sample, const MaskConfig& config,
                                     uint64_t seed, const std::string& mask_literal = "[mask]",
                                     std::string provenance_id = {}) {
    if (sample.kind != CycleKind::len4_diagonal)
        throw input_error("mask_reason_len4 requires a length-4 sample");
    auto ts = detail::tokenize(sample.sentences);

    Rng rng(seed);
    std::vector<uint32_t> picked;
    Task task;
    if (rng.chance(config.sentence_mask_fraction)) {
        task = Task::reason_len4_sentence;
        uint32_t s = uint32_t(rng.below(ts.sentences.size()));
        for (const auto& es : ts.entity_spans) {
            if (es.sentence != s) continue;
            for (uint32_t p = es.begin; p < es.end; ++p) picked.push_back(p);
        }
    } else {
        task = Task::reason_len4_partial;
        const auto& rel = ts.relation_spans[rng.below(ts.relation_spans.size())];
        for (uint32_t p = rel.begin; p < rel.end; ++p) picked.push_back(p);

        uint32_t count = rng.chance(config.one_entity_prob) ? 1 : 2;
        uint32_t total = uint32_t(ts.entity_spans.size());
        uint32_t first = uint32_t(rng.below(total));
        std::vector<uint32_t> chosen{first};
        if (count == 2) {
            uint32_t second = uint32_t(rng.below(total - 1));
            if (second >= first) ++second;
            chosen.push_back(second);
        }
        for (uint32_t ei : chosen) {
            const auto& es = ts.entity_spans[ei];
            for (uint32_t p = es.begin; p < es.end; ++p) picked.push_back(p);
        }
    }

    return detail::finish(std::move(ts), picked, task, mask_literal, std::move(provenance_id),
                          seed);
}

// Applies targets back over the masked tokens and re-joins. Tokens are
// separated by single spaces; a "." token attaches to its predecessor.
inline std::string reconstruct(const MaskedSample& sample) {
    std::vector<const std::string*> toks(sample.tokens.size());
    for (size_t i = 0; i < sample.tokens.size(); ++i) toks[i] = &sample.tokens[i];
    std::vector<std::string> restored;
    for (const auto& [pos, original] : sample.targets) toks[pos] = &original;

    std::string out;
    for (size_t i = 0; i < toks.size(); ++i) {
        if (i > 0 && *toks[i] != ".") out += ' ';
        out += *toks[i];
    }
    return out;
}

// Source-side counterpart of reconstruct() for multi-sentence records.
inline std::string joined_text(std::span<const SyntheticSentence> sentences) {
    std::string out;
    for (size_t i = 0; i < sentences.size(); ++i) {
        if (i > 0) out += ' ';
        out += sentences[i].text;
    }
    return out;
}

}  // namespace kgc
