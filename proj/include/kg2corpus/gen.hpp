#pragma once
// Corpus-scale sentence generation. One record per (triple, language):
// every configured target language for code-switched mode, every configured
// language for parallel mode. The per-record seed is derived from
// (global seed, stream tag, triple index, language index); the first draw
// decides whether the record falls in the alias-replaced fraction.
//
// Work is split into fixed shards of triples. Workers render shard buffers
// in parallel; buffers are flushed in shard order, so the output stream is
// byte-identical for any worker count. Shards are processed in bounded
// waves to keep memory flat on large graphs.

#include <string>
#include <vector>

#include "kg2corpus/jsonl.hpp"
#include "kg2corpus/parallel.hpp"
#include "kg2corpus/rng.hpp"
#include "kg2corpus/sentence.hpp"

namespace kgc {

enum class GenMode { code_switched, parallel };

struct GenConfig {
    std::vector<std::string> languages;  // empty = the store's language set
    std::string mask_literal = "[mask]";
    double alias_fraction = 0.5;
    uint64_t seed = 0;
    uint32_t threads = 0;
};

struct GenStats {
    uint64_t emitted = 0;
    uint64_t skipped_missing_labels = 0;
    std::vector<std::pair<std::string, uint64_t>> emitted_per_lang;
    std::vector<std::pair<std::string, uint64_t>> skipped_per_lang;
};

namespace detail {

inline std::vector<uint8_t> gen_lang_indexes(const Store& store, const GenConfig& config,
                                             GenMode mode) {
    std::vector<uint8_t> out;
    const auto& langs = config.languages.empty() ? store.languages() : config.languages;
    for (const auto& code : langs) {
        auto idx = store.lang_index(code);
        if (!idx) throw input_error("language not in store: '" + code + "'");
        if (mode == GenMode::code_switched && code == "en") continue;
        out.push_back(*idx);
    }
    if (out.empty()) throw input_error("no applicable languages for generation");
    return out;
}

}  // namespace detail

// Renders the record for (triple index, language); nullopt when labels are
// missing. Exposed separately so tests can pin individual records.
inline std::optional<SyntheticSentence> gen_record(const Store& store, const SentenceGen& gen,
                                                   const GenConfig& config, GenMode mode,
                                                   uint64_t triple_index, uint8_t lang) {
    uint64_t tag = mode == GenMode::code_switched ? seed_tag::gen_code_switched
                                                  : seed_tag::gen_parallel;
    uint64_t record_seed = derive_seed(config.seed, {tag, triple_index, lang});
    Rng rng(record_seed);
    bool use_aliases = rng.chance(config.alias_fraction);
    uint64_t inner = rng.next();
    const Triple& t = store.triples()[triple_index];
    auto sentence = mode == GenMode::code_switched
                        ? gen.code_switched(t, lang, use_aliases, inner)
                        : gen.parallel(t, lang, use_aliases, inner);
    if (sentence) sentence->prov.seed = record_seed;
    return sentence;
}

inline GenStats gen_corpus(const Store& store, const GenConfig& config, GenMode mode,
                           const std::string& out_path) {
    SentenceGen gen(store, config.mask_literal);
    std::vector<uint8_t> langs = detail::gen_lang_indexes(store, config, mode);

    const uint64_t triple_count = store.triples().size();
    constexpr uint64_t SHARD = 4096;  // triples per shard
    const uint64_t nshards = (triple_count + SHARD - 1) / SHARD;
    const uint32_t threads = effective_threads(config.threads);
    const uint64_t wave = uint64_t(threads) * 4;

    JsonlWriter writer(out_path);
    GenStats stats;
    std::vector<uint64_t> emitted_per_lang(langs.size(), 0);
    std::vector<uint64_t> skipped_per_lang(langs.size(), 0);

    std::vector<std::string> buffers;
    std::vector<std::vector<uint64_t>> wave_emitted, wave_skipped;
    for (uint64_t wave_begin = 0; wave_begin < nshards; wave_begin += wave) {
        uint64_t wave_end = std::min(nshards, wave_begin + wave);
        uint64_t count = wave_end - wave_begin;
        buffers.assign(count, {});
        wave_emitted.assign(count, std::vector<uint64_t>(langs.size(), 0));
        wave_skipped.assign(count, std::vector<uint64_t>(langs.size(), 0));

        parallel_blocks(wave_begin, wave_end, config.threads, 1,
                        [&](uint32_t, uint64_t shard, uint64_t) {
                            uint64_t slot = shard - wave_begin;
                            std::string& buf = buffers[slot];
                            uint64_t lo = shard * SHARD;
                            uint64_t hi = std::min(triple_count, lo + SHARD);
                            for (uint64_t ti = lo; ti < hi; ++ti) {
                                for (size_t li = 0; li < langs.size(); ++li) {
                                    auto s = gen_record(store, gen, config, mode, ti, langs[li]);
                                    if (!s) {
                                        wave_skipped[slot][li]++;
                                        continue;
                                    }
                                    buf += sentence_to_json(store, *s).dump();
                                    buf += '\n';
                                    wave_emitted[slot][li]++;
                                }
                            }
                        });

        for (uint64_t slot = 0; slot < count; ++slot) {
            uint64_t records = 0;
            for (size_t li = 0; li < langs.size(); ++li) {
                records += wave_emitted[slot][li];
                emitted_per_lang[li] += wave_emitted[slot][li];
                skipped_per_lang[li] += wave_skipped[slot][li];
            }
            writer.write_raw(buffers[slot], records);
        }
    }
    writer.close();

    for (size_t li = 0; li < langs.size(); ++li) {
        const std::string& code = store.languages()[langs[li]];
        stats.emitted += emitted_per_lang[li];
        stats.skipped_missing_labels += skipped_per_lang[li];
        stats.emitted_per_lang.emplace_back(code, emitted_per_lang[li]);
        stats.skipped_per_lang.emplace_back(code, skipped_per_lang[li]);
    }
    return stats;
}

}  // namespace kgc
