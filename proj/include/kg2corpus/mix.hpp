#pragma once
// mix-streams: interleave the plain-text, knowledge and reasoning record
// streams into one globally shuffled stream.
//
// Every record gets a shuffle key derived from (seed, stream, record index)
// and is routed to one of 256 buckets by the key's top byte. Buckets are
// drained in order, each sorted by (key, stream, record index), which yields
// a seed-deterministic permutation of all records. When the in-memory bucket
// volume exceeds the budget, buckets spill to temporary files, so memory
// stays bounded regardless of corpus size.
//
// Plain-text lines are opaque; they are wrapped as {"task":"mlm","text":...}
// records. Masked records pass through byte-for-byte.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kg2corpus/jsonl.hpp"
#include "kg2corpus/rng.hpp"

namespace kgc {

struct MixManifest {
    std::optional<std::string> plain_path;  // optional opaque pass-through stream
    std::string knowledge_path;
    std::string reasoning_path;
    uint64_t batch_size_plain = 9600;
    uint64_t batch_size_knowledge = 9600;
    uint64_t batch_size_reasoning = 9600;
    double alpha = 0.3;                 // knowledge/reasoning loss weight, carried as metadata
    uint32_t max_sequence_length = 128;  // trainer metadata; the mixer does not chunk
};

struct MixResult {
    uint64_t total = 0;
    uint64_t plain = 0;
    uint64_t knowledge = 0;
    uint64_t reasoning = 0;
};

namespace detail {

struct MixBucket {
    struct Entry {
        uint64_t key;
        uint32_t stream;
        uint64_t index;
        std::string line;
    };
    std::vector<Entry> entries;
    uint64_t bytes = 0;
    std::string spill_path;
    std::ofstream spill;

    void spill_to(const std::string& path) {
        if (!spill.is_open()) {
            spill_path = path;
            spill.open(path, std::ios::binary | std::ios::trunc);
            if (!spill) throw input_error("cannot create spill file: " + path);
        }
        for (const Entry& e : entries) {
            spill.write(reinterpret_cast<const char*>(&e.key), 8);
            spill.write(reinterpret_cast<const char*>(&e.stream), 4);
            spill.write(reinterpret_cast<const char*>(&e.index), 8);
            uint32_t len = uint32_t(e.line.size());
            spill.write(reinterpret_cast<const char*>(&len), 4);
            spill.write(e.line.data(), len);
        }
        entries.clear();
        entries.shrink_to_fit();
        bytes = 0;
    }

    void load_spilled() {
        if (!spill.is_open()) return;
        spill.close();
        std::ifstream in(spill_path, std::ios::binary);
        if (!in) throw input_error("cannot reopen spill file: " + spill_path);
        for (;;) {
            Entry e;
            in.read(reinterpret_cast<char*>(&e.key), 8);
            if (!in) break;
            in.read(reinterpret_cast<char*>(&e.stream), 4);
            in.read(reinterpret_cast<char*>(&e.index), 8);
            uint32_t len = 0;
            in.read(reinterpret_cast<char*>(&len), 4);
            e.line.resize(len);
            in.read(e.line.data(), len);
            if (!in) throw input_error("truncated spill file: " + spill_path);
            entries.push_back(std::move(e));
        }
        in.close();
        std::remove(spill_path.c_str());
    }
};

}  // namespace detail

inline MixResult mix_streams(const MixManifest& manifest, uint64_t seed,
                             const std::string& out_path, const std::string& manifest_out_path,
                             uint64_t memory_budget_bytes = uint64_t(512) << 20) {
    struct StreamSpec {
        std::string name;
        std::string path;
        bool wrap_plain;
    };
    if (manifest.alpha < 0.0 || manifest.alpha > 1.0)
        throw input_error("mix: alpha must be in [0, 1]");
    if (manifest.batch_size_plain == 0 || manifest.batch_size_knowledge == 0 ||
        manifest.batch_size_reasoning == 0)
        throw input_error("mix: batch sizes must be positive");

    std::vector<StreamSpec> streams;
    if (manifest.plain_path) streams.push_back({"plain", *manifest.plain_path, true});
    streams.push_back({"knowledge", manifest.knowledge_path, false});
    streams.push_back({"reasoning", manifest.reasoning_path, false});

    for (const auto& s : streams)
        if (!std::filesystem::exists(s.path))
            throw input_error("mix: missing stream '" + s.name + "': " + s.path);

    std::vector<detail::MixBucket> buckets(256);
    uint64_t in_memory = 0;
    uint64_t spill_serial = 0;

    std::vector<uint64_t> per_stream(streams.size(), 0);
    for (uint32_t si = 0; si < streams.size(); ++si) {
        const auto& spec = streams[si];
        uint64_t rec_idx = 0;
        for_each_line(spec.path, [&](uint64_t line_no, const std::string& line) {
            std::string record;
            if (spec.wrap_plain) {
                json j;
                j["v"] = SCHEMA_VERSION;
                j["task"] = "mlm";
                j["text"] = line;
                record = j.dump();
            } else {
                json j = parse_record(spec.path, line_no, line);
                check_schema_version(j, spec.path + ":" + std::to_string(line_no));
                if (!j.contains("task"))
                    throw input_error(spec.path + ":" + std::to_string(line_no) +
                                      ": record lacks 'task'");
                record = line;
            }
            uint64_t key = derive_seed(seed, {seed_tag::mix, si, rec_idx});
            auto& bucket = buckets[key >> 56];
            in_memory += record.size() + 40;
            bucket.bytes += record.size() + 40;
            bucket.entries.push_back({key, si, rec_idx, std::move(record)});
            ++rec_idx;

            if (in_memory > memory_budget_bytes) {
                // spill the heaviest bucket
                size_t heaviest = 0;
                for (size_t b = 1; b < buckets.size(); ++b)
                    if (buckets[b].bytes > buckets[heaviest].bytes) heaviest = b;
                in_memory -= buckets[heaviest].bytes;
                buckets[heaviest].spill_to(out_path + ".spill" + std::to_string(spill_serial++));
            }
        });
        per_stream[si] = rec_idx;
    }

    JsonlWriter writer(out_path);
    for (auto& bucket : buckets) {
        bucket.load_spilled();
        std::sort(bucket.entries.begin(), bucket.entries.end(),
                  [](const auto& a, const auto& b) {
                      if (a.key != b.key) return a.key < b.key;
                      if (a.stream != b.stream) return a.stream < b.stream;
                      return a.index < b.index;
                  });
        for (const auto& e : bucket.entries) writer.write_line(e.line);
        bucket.entries.clear();
        bucket.entries.shrink_to_fit();
    }

    MixResult result;
    result.total = writer.count();
    writer.close();

    json manifest_json;
    manifest_json["v"] = SCHEMA_VERSION;
    manifest_json["alpha"] = manifest.alpha;
    manifest_json["max_sequence_length"] = manifest.max_sequence_length;
    manifest_json["seed"] = seed;
    manifest_json["total_records"] = result.total;
    json stream_list = json::array();
    for (uint32_t si = 0; si < streams.size(); ++si) {
        uint64_t batch = streams[si].name == "plain"       ? manifest.batch_size_plain
                         : streams[si].name == "knowledge" ? manifest.batch_size_knowledge
                                                           : manifest.batch_size_reasoning;
        stream_list.push_back({{"name", streams[si].name},
                               {"path", streams[si].path},
                               {"records", per_stream[si]},
                               {"batch_size", batch}});
        if (streams[si].name == "plain") result.plain = per_stream[si];
        else if (streams[si].name == "knowledge") result.knowledge = per_stream[si];
        else result.reasoning = per_stream[si];
    }
    manifest_json["streams"] = std::move(stream_list);

    std::ofstream mout(manifest_out_path, std::ios::trunc);
    if (!mout) throw input_error("cannot write: " + manifest_out_path);
    mout << manifest_json.dump(2) << '\n';

    return result;
}

}  // namespace kgc
