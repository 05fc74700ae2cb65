#pragma once
// Ingest: lexicon JSONL + triples TSV -> validated Store.
//
// Lexicon line:  {"id": "Q1420", "labels": {"en": {"label": "motor car",
//                 "aliases": ["auto", "autocar"]}, ...}}
// Triples line:  <head-id> \t <relation-id> \t <tail-id>
//                lines starting with '#' are comments, blank lines skipped.
//
// Ids starting with 'P' name relations, everything else entities (the two
// namespaces are disjoint). Language codes outside the configured set are
// hard errors; triples referencing items absent from the lexicon follow the
// configurable drop-or-error policy.

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "kg2corpus/store.hpp"

namespace kgc {

struct IngestConfig {
    std::vector<std::string> languages = {"en", "vi", "nl", "de", "fr",
                                          "it", "es", "ja", "ko", "zh"};
    uint32_t max_aliases = 16;
    OnMissingItem on_missing = OnMissingItem::drop;
};

struct IngestResult {
    Store store;
    IngestReport report;
    std::vector<std::string> warnings;
};

inline bool is_relation_id(std::string_view id) { return !id.empty() && id[0] == 'P'; }

inline void read_lexicon_file(const std::string& path, StoreBuilder& builder) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open lexicon file: " + path);

    std::string line;
    uint64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw input_error(path + ":" + std::to_string(line_no) +
                              ": malformed JSON: " + e.what());
        }
        if (!obj.is_object() || !obj.contains("id") || !obj["id"].is_string())
            throw input_error(path + ":" + std::to_string(line_no) + ": missing string field 'id'");

        std::string id = obj["id"].get<std::string>();
        if (id.empty())
            throw input_error(path + ":" + std::to_string(line_no) + ": empty id");

        ItemKind kind = is_relation_id(id) ? ItemKind::relation : ItemKind::entity;
        uint32_t idx = kind == ItemKind::relation ? builder.add_relation(id) : builder.add_entity(id);

        if (!obj.contains("labels")) continue;
        const auto& labels = obj["labels"];
        if (!labels.is_object())
            throw input_error(path + ":" + std::to_string(line_no) + ": 'labels' must be an object");

        for (const auto& [lang, entry] : labels.items()) {
            auto li = builder.lang_index(lang);
            if (!li)
                throw input_error(path + ":" + std::to_string(line_no) +
                                  ": unknown language code '" + lang + "'");
            if (!entry.is_object() || !entry.contains("label") || !entry["label"].is_string())
                throw input_error(path + ":" + std::to_string(line_no) + ": language '" + lang +
                                  "' missing string field 'label'");
            std::vector<std::string> aliases;
            if (entry.contains("aliases")) {
                if (!entry["aliases"].is_array())
                    throw input_error(path + ":" + std::to_string(line_no) +
                                      ": 'aliases' must be an array");
                for (const auto& a : entry["aliases"]) {
                    if (!a.is_string())
                        throw input_error(path + ":" + std::to_string(line_no) +
                                          ": alias entries must be strings");
                    aliases.push_back(a.get<std::string>());
                }
            }
            builder.set_surfaces(kind, idx, *li, entry["label"].get<std::string>(), aliases);
        }
    }
}

inline void read_triples_file(const std::string& path, StoreBuilder& builder) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open triples file: " + path);

    std::string line;
    uint64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;

        size_t t1 = line.find('\t');
        size_t t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
        if (t1 == std::string::npos || t2 == std::string::npos ||
            line.find('\t', t2 + 1) != std::string::npos)
            throw input_error(path + ":" + std::to_string(line_no) +
                              ": expected 3 tab-separated columns");

        std::string_view head(line.data(), t1);
        std::string_view rel(line.data() + t1 + 1, t2 - t1 - 1);
        std::string_view tail(line.data() + t2 + 1, line.size() - t2 - 1);
        if (head.empty() || rel.empty() || tail.empty())
            throw input_error(path + ":" + std::to_string(line_no) + ": empty column");

        builder.add_triple(head, rel, tail);
    }
}

inline IngestResult ingest(const std::string& lexicon_path, const std::string& triples_path,
                           const IngestConfig& config = {}) {
    StoreBuilder builder;
    builder.set_languages(config.languages);
    builder.set_max_aliases(config.max_aliases);
    builder.set_on_missing(config.on_missing);

    read_lexicon_file(lexicon_path, builder);
    read_triples_file(triples_path, builder);

    IngestResult result;
    result.store = builder.build();
    result.report = builder.report();
    if (result.report.triple_lines == 0)
        result.warnings.push_back("triples file contains no triples: " + triples_path);
    if (result.report.triples_stored == 0 && result.report.triple_lines > 0)
        result.warnings.push_back("all input triples were dropped");
    return result;
}

}  // namespace kgc
