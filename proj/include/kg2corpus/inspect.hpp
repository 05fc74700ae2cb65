#pragma once
// Record inspection: schema-aware pretty printing for every pipeline JSONL
// format. Loss-masked positions are shown as [[original]], structural masks
// stay as the literal, so a masked record reads like its training-time
// surface with the supervised positions highlighted.

#include <iostream>
#include <optional>
#include <string>

#include "kg2corpus/jsonl.hpp"

namespace kgc {

struct InspectFilter {
    std::optional<std::string> task;
    std::optional<std::string> lang;
    std::optional<std::string> prov;  // substring match on provenance / id / key

    // accepts "task=reason-len3", "lang=fr", "prov=Q1420"
    void add(const std::string& expr) {
        size_t eq = expr.find('=');
        if (eq == std::string::npos)
            throw input_error("filter must be key=value, got '" + expr + "'");
        std::string key = expr.substr(0, eq);
        std::string value = expr.substr(eq + 1);
        if (key == "task") task = value;
        else if (key == "lang") lang = value;
        else if (key == "prov") prov = value;
        else throw input_error("unknown filter key '" + key + "' (task|lang|prov)");
    }
};

namespace detail {

inline std::string record_lang(const json& j) {
    if (j.contains("lang") && j["lang"].is_string()) return j["lang"].get<std::string>();
    if (j.contains("prov") && j["prov"].is_object() && j["prov"].contains("lang"))
        return j["prov"]["lang"].get<std::string>();
    return {};
}

inline std::string record_prov(const json& j) {
    if (j.contains("prov") && j["prov"].is_object()) {
        const json& p = j["prov"];
        if (p.contains("src")) return p["src"].get<std::string>();
        std::string out;
        for (const char* k : {"h", "r", "t"})
            if (p.contains(k)) out += p[k].get<std::string>() + "|";
        return out;
    }
    if (j.contains("id")) return j["id"].get<std::string>();
    if (j.contains("key")) return j["key"].get<std::string>();
    return {};
}

inline bool matches(const json& j, const InspectFilter& f) {
    if (f.task) {
        if (!j.contains("task") || j["task"].get<std::string>() != *f.task) return false;
    }
    if (f.lang && record_lang(j) != *f.lang) return false;
    if (f.prov && record_prov(j).find(*f.prov) == std::string::npos) return false;
    return true;
}

inline void print_masked(const json& j, std::ostream& os) {
    auto tokens = j.at("tokens").get<std::vector<std::string>>();
    auto flags = j.at("flags").get<std::vector<int>>();
    std::vector<std::string> originals(tokens.size());
    for (const json& t : j.at("targets")) originals[t.at(0).get<size_t>()] = t.at(1);

    os << j.at("task").get<std::string>() << "  " << record_prov(j) << '\n' << "  ";
    for (size_t i = 0; i < tokens.size(); ++i) {
        if (i > 0 && tokens[i] != ".") os << ' ';
        if (i < flags.size() && flags[i] == int(TokenFlag::loss_masked))
            os << "[[" << originals[i] << "]]";
        else os << tokens[i];
    }
    os << '\n';
}

inline void print_sentence(const json& j, std::ostream& os) {
    os << "sentence  " << record_prov(j) << "  lang=" << record_lang(j);
    if (j.contains("prov") && j["prov"].contains("variant"))
        os << "  variant=" << j["prov"]["variant"].get<std::string>();
    os << '\n' << "  " << j.at("text").get<std::string>() << '\n';
}

inline void print_reasoning(const json& j, std::ostream& os) {
    os << "reasoning " << j.at("kind").get<std::string>() << "  lang=" << record_lang(j)
       << "  key=" << j.at("key").get<std::string>() << '\n';
    for (const json& s : j.at("sentences")) os << "  " << s.at("text").get<std::string>() << '\n';
}

inline void print_cycle(const json& j, std::ostream& os) {
    os << "cycle " << j.at("kind").get<std::string>() << "  key=" << j.at("key").get<std::string>()
       << '\n' << "  entities:";
    for (const json& e : j.at("entities")) os << ' ' << e.get<std::string>();
    os << "\n  covering:";
    for (const json& t : j.at("covering"))
        os << "  (" << t.at("h").get<std::string>() << "," << t.at("r").get<std::string>() << ","
           << t.at("t").get<std::string>() << ")";
    os << '\n';
}

inline void print_xlr(const json& j, std::ostream& os) {
    os << "xlr " << j.at("id").get<std::string>() << "  lang=" << record_lang(j) << '\n';
    for (const json& c : j.at("context")) os << "  context: " << c.get<std::string>() << '\n';
    os << "  question: " << j.at("question").get<std::string>() << '\n';
    size_t answer = j.at("answer").get<size_t>();
    const json& choices = j.at("choices");
    for (size_t i = 0; i < choices.size(); ++i)
        os << "  " << (i == answer ? "*" : " ") << " " << choices[i].get<std::string>() << '\n';
}

inline void print_plain(const json& j, std::ostream& os) {
    os << "mlm\n  " << j.at("text").get<std::string>() << '\n';
}

}  // namespace detail

// Pretty-prints records passing the filter; returns the number printed.
inline uint64_t inspect_file(const std::string& path, const InspectFilter& filter,
                             std::ostream& os, uint64_t limit = UINT64_MAX) {
    uint64_t shown = 0;
    for_each_line(path, [&](uint64_t line_no, const std::string& line) {
        if (shown >= limit) return;
        json j = parse_record(path, line_no, line);
        check_schema_version(j, path + ":" + std::to_string(line_no));
        if (!detail::matches(j, filter)) return;
        ++shown;

        if (j.contains("tokens")) detail::print_masked(j, os);
        else if (j.contains("sentences")) detail::print_reasoning(j, os);
        else if (j.contains("spans")) detail::print_sentence(j, os);
        else if (j.contains("choices")) detail::print_xlr(j, os);
        else if (j.contains("covering")) detail::print_cycle(j, os);
        else if (j.contains("task") && j["task"] == "mlm") detail::print_plain(j, os);
        else
            throw input_error(path + ":" + std::to_string(line_no) +
                              ": record does not match any known schema");
    });
    return shown;
}

}  // namespace kgc
