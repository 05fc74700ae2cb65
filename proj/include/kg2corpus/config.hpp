#pragma once
// Declarative pipeline configuration: one document, one section per stage,
// `key = value` entries (a TOML subset: quoted strings, integers, floats,
// booleans and flat arrays). Shipped defaults are the full training recipe,
// so an empty document is a valid config once the input paths are set.
//
// Loading is strict: unknown sections or keys are errors, which catches
// typos before a multi-hour run does.

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "kg2corpus/hash.hpp"
#include "kg2corpus/mask.hpp"
#include "kg2corpus/store.hpp"
#include "kg2corpus/xlr.hpp"

namespace kgc {

class ConfigDoc {
  public:
    using Value = std::variant<std::string, int64_t, double, bool, std::vector<std::string>>;

    static ConfigDoc parse_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw input_error("cannot open config: " + path);
        std::stringstream buf;
        buf << in.rdbuf();
        return parse(buf.str(), path);
    }

    static ConfigDoc parse(std::string_view text, const std::string& origin = "<config>") {
        ConfigDoc doc;
        std::string section;
        uint64_t line_no = 0;
        size_t pos = 0;
        while (pos <= text.size()) {
            size_t eol = text.find('\n', pos);
            if (eol == std::string_view::npos) eol = text.size();
            std::string_view line = text.substr(pos, eol - pos);
            pos = eol + 1;
            ++line_no;

            line = trim(line);
            if (line.empty() || line[0] == '#') continue;

            if (line.front() == '[') {
                if (line.back() != ']')
                    throw input_error(origin + ":" + std::to_string(line_no) +
                                      ": malformed section header");
                section = std::string(trim(line.substr(1, line.size() - 2)));
                if (section.empty())
                    throw input_error(origin + ":" + std::to_string(line_no) + ": empty section");
                doc.sections_[section];
                continue;
            }

            size_t eq = line.find('=');
            if (eq == std::string_view::npos)
                throw input_error(origin + ":" + std::to_string(line_no) + ": expected key = value");
            std::string key(trim(line.substr(0, eq)));
            std::string_view raw = trim(line.substr(eq + 1));
            if (key.empty() || raw.empty())
                throw input_error(origin + ":" + std::to_string(line_no) + ": empty key or value");
            doc.sections_[section][key] =
                parse_value(raw, origin + ":" + std::to_string(line_no));
        }
        return doc;
    }

    std::optional<Value> get(const std::string& section, const std::string& key) const {
        auto s = sections_.find(section);
        if (s == sections_.end()) return std::nullopt;
        auto k = s->second.find(key);
        if (k == s->second.end()) return std::nullopt;
        consumed_.insert(section + "." + key);
        return k->second;
    }

    std::string get_string(const std::string& section, const std::string& key,
                           std::string fallback) const {
        auto v = get(section, key);
        if (!v) return fallback;
        if (auto* s = std::get_if<std::string>(&*v)) return *s;
        throw input_error("config " + section + "." + key + ": expected string");
    }

    int64_t get_int(const std::string& section, const std::string& key, int64_t fallback) const {
        auto v = get(section, key);
        if (!v) return fallback;
        if (auto* i = std::get_if<int64_t>(&*v)) return *i;
        throw input_error("config " + section + "." + key + ": expected integer");
    }

    double get_double(const std::string& section, const std::string& key, double fallback) const {
        auto v = get(section, key);
        if (!v) return fallback;
        if (auto* d = std::get_if<double>(&*v)) return *d;
        if (auto* i = std::get_if<int64_t>(&*v)) return double(*i);
        throw input_error("config " + section + "." + key + ": expected number");
    }

    bool get_bool(const std::string& section, const std::string& key, bool fallback) const {
        auto v = get(section, key);
        if (!v) return fallback;
        if (auto* b = std::get_if<bool>(&*v)) return *b;
        throw input_error("config " + section + "." + key + ": expected bool");
    }

    std::vector<std::string> get_list(const std::string& section, const std::string& key,
                                      std::vector<std::string> fallback) const {
        auto v = get(section, key);
        if (!v) return fallback;
        if (auto* l = std::get_if<std::vector<std::string>>(&*v)) return *l;
        throw input_error("config " + section + "." + key + ": expected list");
    }

    // All keys never touched by a get_* call; used to reject typos.
    std::vector<std::string> unconsumed() const {
        std::vector<std::string> out;
        for (const auto& [section, keys] : sections_)
            for (const auto& [key, value] : keys)
                if (!consumed_.count(section + "." + key)) out.push_back(section + "." + key);
        return out;
    }

    void reject_unconsumed() const {
        auto leftover = unconsumed();
        if (leftover.empty()) return;
        std::string msg = "unknown config keys:";
        for (const auto& k : leftover) msg += " " + k;
        throw input_error(msg);
    }

  private:
    static std::string_view trim(std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
            s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
            s.remove_suffix(1);
        return s;
    }

    static Value parse_value(std::string_view raw, const std::string& where) {
        if (raw.front() == '"') {
            if (raw.size() < 2 || raw.back() != '"')
                throw input_error(where + ": unterminated string");
            std::string out;
            for (size_t i = 1; i + 1 < raw.size(); ++i) {
                if (raw[i] == '\\' && i + 2 < raw.size()) {
                    char c = raw[++i];
                    out += c == 'n' ? '\n' : c == 't' ? '\t' : c;
                } else {
                    out += raw[i];
                }
            }
            return out;
        }
        if (raw.front() == '[') {
            if (raw.back() != ']') throw input_error(where + ": unterminated array");
            std::vector<std::string> items;
            std::string_view body = trim(raw.substr(1, raw.size() - 2));
            while (!body.empty()) {
                size_t comma = body.find(',');
                std::string_view item = trim(body.substr(0, comma));
                if (!item.empty()) {
                    if (item.front() == '"' && item.back() == '"' && item.size() >= 2)
                        item = item.substr(1, item.size() - 2);
                    items.emplace_back(item);
                }
                if (comma == std::string_view::npos) break;
                body = trim(body.substr(comma + 1));
            }
            return items;
        }
        if (raw == "true") return true;
        if (raw == "false") return false;

        std::string s(raw);
        if (s.find_first_of(".eE") != std::string::npos) {
            size_t used = 0;
            double d = std::stod(s, &used);
            if (used != s.size()) throw input_error(where + ": malformed number '" + s + "'");
            return d;
        }
        try {
            size_t used = 0;
            int64_t i = std::stoll(s, &used, 10);
            if (used != s.size()) throw input_error(where + ": malformed value '" + s + "'");
            return i;
        } catch (const std::logic_error&) {
            throw input_error(where + ": malformed value '" + s + "'");
        }
    }

    std::map<std::string, std::map<std::string, Value>> sections_;
    mutable std::set<std::string> consumed_;
};

// Everything run-all needs, with defaults mirroring the shipped recipe.
struct PipelineConfig {
    // [pipeline]
    std::vector<std::string> languages = {"en", "vi", "nl", "de", "fr",
                                          "it", "es", "ja", "ko", "zh"};
    uint64_t seed = 0;
    std::string out_dir = "out";
    uint32_t threads = 0;

    // [ingest]
    std::string lexicon_path;
    std::string triples_path;
    OnMissingItem on_missing = OnMissingItem::drop;
    uint32_t max_aliases = 16;

    // [gen]
    double alias_fraction = 0.5;
    std::string mask_literal = "[mask]";

    // [cycles]
    uint32_t degree_cap = 1000;
    bool all_relation_combos = false;

    // [mask]
    MaskConfig mask;

    // [xlr]
    XlrConfig xlr;

    // [mix]
    std::optional<std::string> plain_text_path;
    uint64_t batch_size_plain = 9600;
    uint64_t batch_size_knowledge = 9600;
    uint64_t batch_size_reasoning = 9600;
    double alpha = 0.3;
    uint32_t max_sequence_length = 128;

    void validate() const {
        if (languages.empty()) throw input_error("config: language set must not be empty");
        bool has_en = false;
        for (const auto& l : languages) has_en |= l == "en";
        if (!has_en) throw input_error("config: language set must contain \"en\"");
        if (mask.mlm_probability < 0.0 || mask.mlm_probability > 1.0)
            throw input_error("config: mlm_probability must be in [0, 1]");
        if (mask.sentence_mask_fraction < 0.0 || mask.sentence_mask_fraction > 1.0)
            throw input_error("config: sentence_mask_fraction must be in [0, 1]");
        if (alias_fraction < 0.0 || alias_fraction > 1.0)
            throw input_error("config: alias_fraction must be in [0, 1]");
        if (alpha < 0.0 || alpha > 1.0) throw input_error("config: alpha must be in [0, 1]");
        if (mask_literal.empty()) throw input_error("config: mask_literal must not be empty");
    }
};

inline PipelineConfig load_pipeline_config(const ConfigDoc& doc) {
    PipelineConfig cfg;
    cfg.languages = doc.get_list("pipeline", "languages", cfg.languages);
    cfg.seed = uint64_t(doc.get_int("pipeline", "seed", int64_t(cfg.seed)));
    cfg.out_dir = doc.get_string("pipeline", "out", cfg.out_dir);
    cfg.threads = uint32_t(doc.get_int("pipeline", "threads", cfg.threads));

    cfg.lexicon_path = doc.get_string("ingest", "lexicon", cfg.lexicon_path);
    cfg.triples_path = doc.get_string("ingest", "triples", cfg.triples_path);
    std::string on_missing = doc.get_string("ingest", "on_missing_entity", "drop");
    if (on_missing == "drop") cfg.on_missing = OnMissingItem::drop;
    else if (on_missing == "error") cfg.on_missing = OnMissingItem::error;
    else throw input_error("config ingest.on_missing_entity: expected drop|error");
    cfg.max_aliases = uint32_t(doc.get_int("ingest", "max_aliases", cfg.max_aliases));

    cfg.alias_fraction = doc.get_double("gen", "alias_fraction", cfg.alias_fraction);
    cfg.mask_literal = doc.get_string("gen", "mask_token", cfg.mask_literal);

    cfg.degree_cap = uint32_t(doc.get_int("cycles", "degree_cap", cfg.degree_cap));
    std::string edge_rels = doc.get_string("cycles", "edge_relations", "first");
    if (edge_rels == "first") cfg.all_relation_combos = false;
    else if (edge_rels == "all") cfg.all_relation_combos = true;
    else throw input_error("config cycles.edge_relations: expected first|all");

    cfg.mask.mlm_probability = doc.get_double("mask", "mlm_probability", cfg.mask.mlm_probability);
    cfg.mask.min_masked_tokens =
        uint32_t(doc.get_int("mask", "min_masked_tokens", cfg.mask.min_masked_tokens));
    cfg.mask.sentence_mask_fraction =
        doc.get_double("mask", "sentence_mask_fraction", cfg.mask.sentence_mask_fraction);
    cfg.mask.one_entity_prob = doc.get_double("mask", "one_entity_prob", cfg.mask.one_entity_prob);

    cfg.xlr.train_size = uint64_t(doc.get_int("xlr", "train", int64_t(cfg.xlr.train_size)));
    cfg.xlr.dev_size = uint64_t(doc.get_int("xlr", "dev", int64_t(cfg.xlr.dev_size)));
    cfg.xlr.test_pool_size =
        uint64_t(doc.get_int("xlr", "test_pool", int64_t(cfg.xlr.test_pool_size)));
    cfg.xlr.question_template =
        doc.get_string("xlr", "question_template", cfg.xlr.question_template);
    for (const auto& lang : cfg.languages) {
        std::string t = doc.get_string("xlr", "template_" + lang, "");
        if (!t.empty()) cfg.xlr.templates_by_lang[lang] = t;
    }

    std::string plain = doc.get_string("mix", "plain_text", "");
    if (!plain.empty()) cfg.plain_text_path = plain;
    cfg.batch_size_plain =
        uint64_t(doc.get_int("mix", "batch_size_plain", int64_t(cfg.batch_size_plain)));
    cfg.batch_size_knowledge =
        uint64_t(doc.get_int("mix", "batch_size_knowledge", int64_t(cfg.batch_size_knowledge)));
    cfg.batch_size_reasoning =
        uint64_t(doc.get_int("mix", "batch_size_reasoning", int64_t(cfg.batch_size_reasoning)));
    cfg.alpha = doc.get_double("mix", "alpha", cfg.alpha);
    cfg.max_sequence_length =
        uint32_t(doc.get_int("mix", "max_sequence_length", cfg.max_sequence_length));

    doc.reject_unconsumed();
    cfg.validate();
    return cfg;
}

inline PipelineConfig load_pipeline_config_file(const std::string& path) {
    return load_pipeline_config(ConfigDoc::parse_file(path));
}

// Stable digest over every field that affects outputs. Reported and used as
// the root of the per-stage fingerprint chain.
inline Key128 config_fingerprint(const PipelineConfig& cfg) {
    HashBuffer buf;
    for (const auto& l : cfg.languages) buf.str(l);
    buf.u64(cfg.seed);
    buf.str(cfg.lexicon_path);
    buf.str(cfg.triples_path);
    buf.u8(cfg.on_missing == OnMissingItem::drop ? 0 : 1);
    buf.u32(cfg.max_aliases);
    buf.u64(uint64_t(cfg.alias_fraction * 1e9));
    buf.str(cfg.mask_literal);
    buf.u32(cfg.degree_cap);
    buf.u8(cfg.all_relation_combos ? 1 : 0);
    buf.u64(uint64_t(cfg.mask.mlm_probability * 1e9));
    buf.u32(cfg.mask.min_masked_tokens);
    buf.u64(uint64_t(cfg.mask.sentence_mask_fraction * 1e9));
    buf.u64(uint64_t(cfg.mask.one_entity_prob * 1e9));
    buf.u64(cfg.xlr.train_size);
    buf.u64(cfg.xlr.dev_size);
    buf.u64(cfg.xlr.test_pool_size);
    buf.str(cfg.xlr.question_template);
    for (const auto& l : cfg.languages) {
        auto it = cfg.xlr.templates_by_lang.find(l);
        buf.str(it == cfg.xlr.templates_by_lang.end() ? std::string_view{} : it->second);
    }
    buf.str(cfg.plain_text_path.value_or(""));
    buf.u64(cfg.batch_size_plain);
    buf.u64(cfg.batch_size_knowledge);
    buf.u64(cfg.batch_size_reasoning);
    buf.u64(uint64_t(cfg.alpha * 1e9));
    buf.u32(cfg.max_sequence_length);
    return buf.digest();
}

}  // namespace kgc
