// Copyright 2026 The mirex Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "stats.hpp"

#include <charconv>

#include "error.hpp"
#include "hash.hpp"
#include "io.hpp"

namespace mirex {

namespace {

struct StatRecord {
    StatKey key;
    std::uint64_t count;

    friend bool operator==(const StatRecord&, const StatRecord&) = default;
};

using StatsJob = engine::Job<StatKey, std::uint64_t, StatRecord, StatKeyHash>;

std::vector<std::uint64_t> sum_values(const StatKey&, std::vector<std::uint64_t> values) {
    std::uint64_t total = 0;
    for (auto v : values) total += v;
    return {total};
}

constexpr std::string_view kStatsMagic = "mirex-stats";
constexpr std::string_view kStatsVersion = "1";

std::uint64_t parse_count(std::string_view field, const std::string& path, std::size_t line) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
        fail(ErrorKind::format, path + ":" + std::to_string(line) + ": expected a non-negative integer, got '" +
                                    std::string(field) + "'");
    }
    return value;
}

}  // namespace

CollectionStats compute_stats(const Corpus& shards, const StatsOptions& options,
                              engine::ShuffleStats<StatKey>* shuffle) {
    StatsJob job;
    const bool strip = options.strip_html;
    job.map = [strip](const Document& doc, StatsJob::emitter_type& out) {
        StringMap<std::uint64_t> counts;
        std::uint64_t length = 0;
        for_each_document_token(doc, strip, [&](std::string_view t) {
            ++length;
            auto it = counts.find(t);
            if (it == counts.end()) {
                counts.emplace(std::string(t), 1);
            } else {
                ++it->second;
            }
        });
        for (auto& [term, n] : counts) out.emit(StatKey{StatKey::term, term}, n);
        out.emit(StatKey{StatKey::length, doc.doc_id}, length);
    };
    job.combine = sum_values;
    job.reduce = [](const StatKey& key, std::vector<std::uint64_t> values, std::vector<StatRecord>& out) {
        std::uint64_t total = 0;
        for (auto v : values) total += v;
        out.push_back(StatRecord{key, total});
    };
    job.value_less = std::less<std::uint64_t>{};

    auto result = engine::run_job(job, shards, engine::RunOptions{options.worker_count, options.use_combiner});

    CollectionStats stats;
    for (auto& rec : result.output) {
        if (rec.key.kind == StatKey::term) {
            stats.cf.emplace_hint(stats.cf.end(), std::move(rec.key.name), rec.count);
            stats.total_tokens += rec.count;
        } else {
            stats.doc_len.emplace_hint(stats.doc_len.end(), std::move(rec.key.name), rec.count);
            ++stats.doc_count;
        }
    }
    if (shuffle != nullptr) *shuffle = std::move(result.shuffle);
    return stats;
}

// File layout, one record per line, fields tab-separated and escaped:
//   mirex-stats  1  <total_tokens>  <doc_count>  <term_count>
//   cf   <term>    <collection frequency>     (term_count lines, ascending)
//   len  <doc_id>  <token count>              (doc_count lines, ascending)
void save_stats(const CollectionStats& stats, const std::string& path) {
    io::FileWriter out(path);
    out.write(std::string(kStatsMagic) + "\t" + std::string(kStatsVersion) + "\t" +
              std::to_string(stats.total_tokens) + "\t" + std::to_string(stats.doc_count) + "\t" +
              std::to_string(stats.cf.size()) + "\n");
    std::string line;
    for (const auto& [term, n] : stats.cf) {
        line = "cf\t" + io::escape_field(term) + "\t" + std::to_string(n) + "\n";
        out.write(line);
    }
    for (const auto& [doc, n] : stats.doc_len) {
        line = "len\t" + io::escape_field(doc) + "\t" + std::to_string(n) + "\n";
        out.write(line);
    }
    out.close();
}

CollectionStats load_stats(const std::string& path) {
    io::LineReader reader(path);
    std::string line;
    auto where = [&] { return path + ":" + std::to_string(reader.line_number()) + ": "; };
    if (!reader.next(line)) fail(ErrorKind::format, path + ": empty stats file");
    auto header = io::split_tabs(line);
    if (header.size() != 5 || header[0] != kStatsMagic) fail(ErrorKind::format, where() + "not a stats file");
    if (header[1] != kStatsVersion) fail(ErrorKind::format, where() + "unsupported stats version '" + std::string(header[1]) + "'");

    CollectionStats stats;
    stats.total_tokens = parse_count(header[2], path, 1);
    stats.doc_count = parse_count(header[3], path, 1);
    const std::uint64_t term_count = parse_count(header[4], path, 1);

    std::uint64_t cf_sum = 0;
    std::uint64_t len_sum = 0;
    while (reader.next(line)) {
        auto fields = io::split_tabs(line);
        if (fields.size() != 3) fail(ErrorKind::format, where() + "expected 3 fields");
        auto name = io::unescape_field(fields[1]);
        if (!name || name->empty()) fail(ErrorKind::format, where() + "bad key");
        std::uint64_t n = parse_count(fields[2], path, reader.line_number());
        if (fields[0] == "cf") {
            if (!stats.doc_len.empty()) fail(ErrorKind::format, where() + "cf record after len section");
            if (n == 0) fail(ErrorKind::format, where() + "zero collection frequency");
            if (!stats.cf.emplace(std::move(*name), n).second) fail(ErrorKind::format, where() + "duplicate term");
            cf_sum += n;
        } else if (fields[0] == "len") {
            if (!stats.doc_len.emplace(std::move(*name), n).second) fail(ErrorKind::format, where() + "duplicate doc_id");
            len_sum += n;
        } else {
            fail(ErrorKind::format, where() + "unknown record type '" + std::string(fields[0]) + "'");
        }
    }
    if (stats.cf.size() != term_count || stats.doc_len.size() != stats.doc_count) {
        fail(ErrorKind::format, path + ": truncated or inconsistent stats file (header announces " +
                                    std::to_string(term_count) + " terms and " + std::to_string(stats.doc_count) +
                                    " documents)");
    }
    if (cf_sum != stats.total_tokens || len_sum != stats.total_tokens) {
        fail(ErrorKind::format, path + ": counts do not sum to total_tokens");
    }
    return stats;
}

}  // namespace mirex
