#pragma once
// JSON Lines record schemas for every pipeline artifact. Each record carries
// a schema version field "v"; readers reject unknown versions. nlohmann
// serializes object keys in sorted order, so identical records are
// byte-identical on disk.

#include <fstream>
#include <functional>
#include <string>

#include <json.hpp>

#include "kg2corpus/cycles.hpp"
#include "kg2corpus/mask.hpp"
#include "kg2corpus/sentence.hpp"
#include "kg2corpus/store.hpp"
#include "kg2corpus/xlr.hpp"

namespace kgc {

inline constexpr int SCHEMA_VERSION = 1;

using json = nlohmann::json;

inline void check_schema_version(const json& record, const std::string& where) {
    if (!record.is_object() || !record.contains("v") || !record["v"].is_number_integer())
        throw input_error(where + ": record lacks schema version field 'v'");
    int v = record["v"].get<int>();
    if (v != SCHEMA_VERSION)
        throw input_error(where + ": unsupported schema version " + std::to_string(v));
}

// ---- synthetic sentences ----

inline json span_to_json(const Store& store, const Span& span) {
    json j;
    j["role"] = span_role_name(span.role);
    j["begin"] = span.begin;
    j["end"] = span.end;
    if (!span.is_link()) {
        j["lang"] = store.languages()[span.lang];
        j["item"] = span.item.kind == ItemKind::entity ? store.entities().id(span.item.idx)
                                                       : store.relations().id(span.item.idx);
        j["alias"] = span.alias_index;
    }
    return j;
}

inline json sentence_to_json(const Store& store, const SyntheticSentence& s) {
    json j;
    j["v"] = SCHEMA_VERSION;
    j["text"] = s.text;
    json spans = json::array();
    for (const Span& span : s.spans) spans.push_back(span_to_json(store, span));
    j["spans"] = std::move(spans);
    j["prov"] = {{"h", store.entities().id(s.prov.triple.head)},
                 {"r", store.relations().id(s.prov.triple.rel)},
                 {"t", store.entities().id(s.prov.triple.tail)},
                 {"lang", store.languages()[s.prov.lang]},
                 {"variant", variant_name(s.prov.variant)},
                 {"seed", s.prov.seed}};
    return j;
}

inline SpanRole span_role_from_name(const std::string& name, const std::string& where) {
    if (name == "head") return SpanRole::head;
    if (name == "relation") return SpanRole::relation;
    if (name == "tail") return SpanRole::tail;
    if (name == "link") return SpanRole::link;
    throw input_error(where + ": unknown span role '" + name + "'");
}

inline Variant variant_from_name(const std::string& name, const std::string& where) {
    if (name == "code-switched") return Variant::code_switched;
    if (name == "parallel") return Variant::parallel;
    if (name == "alias-replaced-cs") return Variant::alias_replaced_cs;
    if (name == "alias-replaced-parallel") return Variant::alias_replaced_parallel;
    throw input_error(where + ": unknown variant '" + name + "'");
}

inline SyntheticSentence sentence_from_json(const Store& store, const json& j,
                                            const std::string& where) {
    check_schema_version(j, where);
    SyntheticSentence s;
    s.text = j.at("text").get<std::string>();
    for (const json& sj : j.at("spans")) {
        Span span;
        span.role = span_role_from_name(sj.at("role").get<std::string>(), where);
        span.begin = sj.at("begin").get<uint32_t>();
        span.end = sj.at("end").get<uint32_t>();
        if (!span.is_link()) {
            auto lang = store.lang_index(sj.at("lang").get<std::string>());
            if (!lang) throw input_error(where + ": unknown language in span");
            span.lang = *lang;
            std::string item = sj.at("item").get<std::string>();
            if (span.role == SpanRole::relation) {
                auto idx = store.relations().find(item);
                if (!idx) throw input_error(where + ": unknown relation '" + item + "'");
                span.item = {ItemKind::relation, *idx};
            } else {
                auto idx = store.entities().find(item);
                if (!idx) throw input_error(where + ": unknown entity '" + item + "'");
                span.item = {ItemKind::entity, *idx};
            }
            span.alias_index = sj.at("alias").get<uint32_t>();
        }
        s.spans.push_back(span);
    }
    const json& p = j.at("prov");
    auto h = store.entities().find(p.at("h").get<std::string>());
    auto r = store.relations().find(p.at("r").get<std::string>());
    auto t = store.entities().find(p.at("t").get<std::string>());
    auto lang = store.lang_index(p.at("lang").get<std::string>());
    if (!h || !r || !t || !lang) throw input_error(where + ": provenance references unknown items");
    s.prov.triple = {*h, *r, *t};
    s.prov.lang = *lang;
    s.prov.variant = variant_from_name(p.at("variant").get<std::string>(), where);
    s.prov.seed = p.at("seed").get<uint64_t>();
    return s;
}

// ---- cycles / reasoning samples ----

inline json triple_to_json(const Store& store, const Triple& t) {
    return {{"h", store.entities().id(t.head)},
            {"r", store.relations().id(t.rel)},
            {"t", store.entities().id(t.tail)}};
}

inline Triple triple_from_json(const Store& store, const json& j, const std::string& where) {
    auto h = store.entities().find(j.at("h").get<std::string>());
    auto r = store.relations().find(j.at("r").get<std::string>());
    auto t = store.entities().find(j.at("t").get<std::string>());
    if (!h || !r || !t) throw input_error(where + ": triple references unknown items");
    return {*h, *r, *t};
}

inline json cycle_to_json(const Store& store, const Cycle& c) {
    json j;
    j["v"] = SCHEMA_VERSION;
    j["kind"] = cycle_kind_name(c.kind);
    json ents = json::array();
    for (uint32_t e : c.entities) ents.push_back(store.entities().id(e));
    j["entities"] = std::move(ents);
    json cov = json::array();
    for (const Triple& t : c.covering) cov.push_back(triple_to_json(store, t));
    j["covering"] = std::move(cov);
    j["key"] = c.key.hex();
    return j;
}

inline Cycle cycle_from_json(const Store& store, const json& j, const std::string& where) {
    check_schema_version(j, where);
    Cycle c;
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "len3") c.kind = CycleKind::len3;
    else if (kind == "len4-diagonal") c.kind = CycleKind::len4_diagonal;
    else throw input_error(where + ": unknown cycle kind '" + kind + "'");
    for (const json& e : j.at("entities")) {
        auto idx = store.entities().find(e.get<std::string>());
        if (!idx) throw input_error(where + ": unknown entity in cycle");
        c.entities.push_back(*idx);
    }
    for (const json& t : j.at("covering")) c.covering.push_back(triple_from_json(store, t, where));
    if (!Key128::parse(j.at("key").get<std::string>(), c.key))
        throw input_error(where + ": malformed canonical key");
    if (c.kind == CycleKind::len4_diagonal) {
        if (c.covering.size() != 5 || c.entities.size() != 4)
            throw input_error(where + ": malformed length-4 cycle");
        const Triple& d = c.covering[4];
        c.diag_pos = (d.head == c.entities[0] || d.tail == c.entities[0]) ? 0 : 1;
    } else if (c.covering.size() != 3 || c.entities.size() != 3) {
        throw input_error(where + ": malformed length-3 cycle");
    }
    return c;
}

inline json reasoning_to_json(const Store& store, const ReasoningSample& rs) {
    json j;
    j["v"] = SCHEMA_VERSION;
    j["kind"] = cycle_kind_name(rs.kind);
    j["lang"] = store.languages()[rs.lang];
    j["key"] = rs.key.hex();
    json sents = json::array();
    for (const auto& s : rs.sentences) sents.push_back(sentence_to_json(store, s));
    j["sentences"] = std::move(sents);
    return j;
}

inline ReasoningSample reasoning_from_json(const Store& store, const json& j,
                                           const std::string& where) {
    check_schema_version(j, where);
    ReasoningSample rs;
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "len3") rs.kind = CycleKind::len3;
    else if (kind == "len4-diagonal") rs.kind = CycleKind::len4_diagonal;
    else throw input_error(where + ": unknown cycle kind '" + kind + "'");
    auto lang = store.lang_index(j.at("lang").get<std::string>());
    if (!lang) throw input_error(where + ": unknown language");
    rs.lang = *lang;
    if (!Key128::parse(j.at("key").get<std::string>(), rs.key))
        throw input_error(where + ": malformed canonical key");
    for (const json& s : j.at("sentences"))
        rs.sentences.push_back(sentence_from_json(store, s, where));
    return rs;
}

// ---- masked samples ----

inline json masked_to_json(const MaskedSample& m) {
    json j;
    j["v"] = SCHEMA_VERSION;
    j["task"] = task_name(m.task);
    j["tokens"] = m.tokens;
    j["flags"] = m.flags;
    json targets = json::array();
    for (const auto& [pos, original] : m.targets) targets.push_back({pos, original});
    j["targets"] = std::move(targets);
    j["prov"] = {{"src", m.provenance_id}, {"seed", m.seed}};
    return j;
}

inline MaskedSample masked_from_json(const json& j, const std::string& where) {
    check_schema_version(j, where);
    MaskedSample m;
    auto task = task_from_name(j.at("task").get<std::string>());
    if (!task) throw input_error(where + ": unknown task '" + j.at("task").get<std::string>() + "'");
    m.task = *task;
    m.tokens = j.at("tokens").get<std::vector<std::string>>();
    m.flags = j.at("flags").get<std::vector<uint8_t>>();
    if (m.flags.size() != m.tokens.size())
        throw input_error(where + ": flags/tokens length mismatch");
    for (const json& t : j.at("targets"))
        m.targets.emplace_back(t.at(0).get<uint32_t>(), t.at(1).get<std::string>());
    m.provenance_id = j.at("prov").at("src").get<std::string>();
    m.seed = j.at("prov").at("seed").get<uint64_t>();
    return m;
}

// ---- XLR items ----

inline json xlr_to_json(const XlrRendered& x) {
    json j;
    j["v"] = SCHEMA_VERSION;
    j["id"] = x.id;
    j["lang"] = x.lang;
    j["context"] = x.context;
    j["question"] = x.question;
    j["choices"] = x.choices;
    j["answer"] = x.answer;
    j["source_cycle_key"] = x.source_cycle_key;
    return j;
}

inline XlrRendered xlr_from_json(const json& j, const std::string& where) {
    check_schema_version(j, where);
    XlrRendered x;
    x.id = j.at("id").get<std::string>();
    x.lang = j.at("lang").get<std::string>();
    x.context = j.at("context").get<std::vector<std::string>>();
    x.question = j.at("question").get<std::string>();
    x.choices = j.at("choices").get<std::vector<std::string>>();
    x.answer = j.at("answer").get<uint32_t>();
    x.source_cycle_key = j.at("source_cycle_key").get<std::string>();
    return x;
}

// ---- line-oriented IO ----

class JsonlWriter {
  public:
    explicit JsonlWriter(const std::string& path) : path_(path), out_(path, std::ios::trunc) {
        if (!out_) throw input_error("cannot write: " + path);
    }

    void write(const json& record) {
        out_ << record.dump() << '\n';
        ++count_;
    }

    void write_line(std::string_view line) {
        out_ << line << '\n';
        ++count_;
    }

    // Pre-serialized blob of `records` newline-terminated lines.
    void write_raw(std::string_view blob, uint64_t records) {
        out_.write(blob.data(), std::streamsize(blob.size()));
        count_ += records;
    }

    uint64_t count() const { return count_; }

    void close() {
        out_.close();
        if (out_.fail()) throw input_error("write failed: " + path_);
    }

  private:
    std::string path_;
    std::ofstream out_;
    uint64_t count_ = 0;
};

// Applies fn(line_number, line) to every non-empty line.
inline uint64_t for_each_line(const std::string& path,
                              const std::function<void(uint64_t, const std::string&)>& fn) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open: " + path);
    std::string line;
    uint64_t line_no = 0, records = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        fn(line_no, line);
        ++records;
    }
    return records;
}

inline json parse_record(const std::string& path, uint64_t line_no, const std::string& line) {
    try {
        return json::parse(line);
    } catch (const json::exception& e) {
        throw input_error(path + ":" + std::to_string(line_no) + ": malformed JSON: " + e.what());
    }
}

}  // namespace kgc
