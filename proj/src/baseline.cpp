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

#include "baseline.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "error.hpp"
#include "io.hpp"

namespace mirex {

namespace {

constexpr std::string_view kIndexMagic = "mirex-index";
constexpr std::string_view kIndexVersion = "1";

std::uint64_t parse_number(std::string_view field, const std::string& where) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size())
        fail(ErrorKind::format, where + "expected a non-negative integer, got '" + std::string(field) + "'");
    return value;
}

}  // namespace

InvertedIndex InvertedIndex::build(const Corpus& shards, bool strip_html) {
    std::vector<const Document*> docs;
    docs.reserve(mirex::document_count(shards));
    for (const auto& shard : shards) {
        for (const auto& d : shard.records) docs.push_back(&d);
    }
    std::sort(docs.begin(), docs.end(), [](const Document* a, const Document* b) { return a->doc_id < b->doc_id; });
    for (std::size_t i = 1; i < docs.size(); ++i) {
        if (docs[i]->doc_id == docs[i - 1]->doc_id)
            fail(ErrorKind::integrity, "duplicate doc_id '" + docs[i]->doc_id + "'");
    }

    InvertedIndex index;
    index.doc_ids_.reserve(docs.size());
    index.doc_lengths_.reserve(docs.size());
    StringMap<std::uint32_t> counts;
    for (std::uint32_t ordinal = 0; ordinal < docs.size(); ++ordinal) {
        counts.clear();
        std::uint64_t length = 0;
        for_each_document_token(*docs[ordinal], strip_html, [&](std::string_view t) {
            ++length;
            auto it = counts.find(t);
            if (it == counts.end()) {
                counts.emplace(std::string(t), 1);
            } else {
                ++it->second;
            }
        });
        for (const auto& [term, tf] : counts) {
            auto it = index.postings_.find(term);
            if (it == index.postings_.end()) it = index.postings_.emplace(term, std::vector<Posting>{}).first;
            it->second.push_back(Posting{ordinal, tf});
        }
        index.doc_ids_.push_back(docs[ordinal]->doc_id);
        index.doc_lengths_.push_back(length);
    }
    index.finalize_stats();
    return index;
}

void InvertedIndex::finalize_stats() {
    stats_ = CollectionStats{};
    stats_.doc_count = doc_ids_.size();
    for (std::size_t i = 0; i < doc_ids_.size(); ++i) {
        stats_.doc_len.emplace_hint(stats_.doc_len.end(), doc_ids_[i], doc_lengths_[i]);
        stats_.total_tokens += doc_lengths_[i];
    }
    for (const auto& [term, list] : postings_) {
        std::uint64_t cf = 0;
        for (const auto& p : list) cf += p.tf;
        stats_.cf.emplace(term, cf);
    }
}

std::span<const Posting> InvertedIndex::postings(std::string_view term) const {
    auto it = postings_.find(term);
    if (it == postings_.end()) return {};
    return it->second;
}

// File layout, tab-separated, escaped fields:
//   mirex-index  1  <doc_count>  <term_count>
//   doc   <doc_id>  <length>                          (doc_count lines, ordinal order)
//   post  <term>    <ordinal>:<tf> <ordinal>:<tf> ... (term_count lines, ascending term)
void InvertedIndex::save(const std::string& path) const {
    io::FileWriter out(path);
    out.write(std::string(kIndexMagic) + "\t" + std::string(kIndexVersion) + "\t" + std::to_string(doc_ids_.size()) +
              "\t" + std::to_string(postings_.size()) + "\n");
    for (std::size_t i = 0; i < doc_ids_.size(); ++i) {
        out.write("doc\t" + io::escape_field(doc_ids_[i]) + "\t" + std::to_string(doc_lengths_[i]) + "\n");
    }
    std::vector<const std::string*> terms;
    terms.reserve(postings_.size());
    for (const auto& [term, list] : postings_) terms.push_back(&term);
    std::sort(terms.begin(), terms.end(), [](const std::string* a, const std::string* b) { return *a < *b; });
    std::string line;
    for (const std::string* term : terms) {
        line = "post\t" + io::escape_field(*term) + "\t";
        bool first = true;
        for (const auto& p : postings_.at(*term)) {
            if (!first) line += ' ';
            first = false;
            line += std::to_string(p.doc);
            line += ':';
            line += std::to_string(p.tf);
        }
        line += '\n';
        out.write(line);
    }
    out.close();
}

InvertedIndex InvertedIndex::load(const std::string& path) {
    io::LineReader reader(path);
    std::string line;
    auto where = [&] { return path + ":" + std::to_string(reader.line_number()) + ": "; };
    if (!reader.next(line)) fail(ErrorKind::format, path + ": empty index file");
    auto header = io::split_tabs(line);
    if (header.size() != 4 || header[0] != kIndexMagic) fail(ErrorKind::format, where() + "not an index file");
    if (header[1] != kIndexVersion) fail(ErrorKind::format, where() + "unsupported index version");
    const std::uint64_t doc_count = parse_number(header[2], where());
    const std::uint64_t term_count = parse_number(header[3], where());

    InvertedIndex index;
    while (reader.next(line)) {
        auto fields = io::split_tabs(line);
        if (fields.size() != 3) fail(ErrorKind::format, where() + "expected 3 fields");
        auto key = io::unescape_field(fields[1]);
        if (!key || key->empty()) fail(ErrorKind::format, where() + "bad key");
        if (fields[0] == "doc") {
            if (!index.postings_.empty()) fail(ErrorKind::format, where() + "doc record after postings");
            if (!index.doc_ids_.empty() && !(index.doc_ids_.back() < *key))
                fail(ErrorKind::format, where() + "documents not in ascending doc_id order");
            index.doc_ids_.push_back(std::move(*key));
            index.doc_lengths_.push_back(parse_number(fields[2], where()));
        } else if (fields[0] == "post") {
            if (index.doc_ids_.size() != doc_count) fail(ErrorKind::format, where() + "document table truncated");
            std::vector<Posting> list;
            for (auto entry : io::split_ws(fields[2])) {
                auto colon = entry.find(':');
                if (colon == std::string_view::npos) fail(ErrorKind::format, where() + "malformed posting");
                std::uint64_t doc = parse_number(entry.substr(0, colon), where());
                std::uint64_t tf = parse_number(entry.substr(colon + 1), where());
                if (doc >= doc_count || tf == 0) fail(ErrorKind::format, where() + "posting out of range");
                if (!list.empty() && list.back().doc >= doc) fail(ErrorKind::format, where() + "postings not ascending");
                list.push_back(Posting{static_cast<std::uint32_t>(doc), static_cast<std::uint32_t>(tf)});
            }
            if (list.empty()) fail(ErrorKind::format, where() + "empty postings list");
            if (!index.postings_.emplace(std::move(*key), std::move(list)).second)
                fail(ErrorKind::format, where() + "duplicate term");
        } else {
            fail(ErrorKind::format, where() + "unknown record type");
        }
    }
    if (index.doc_ids_.size() != doc_count || index.postings_.size() != term_count)
        fail(ErrorKind::format, path + ": truncated index file");
    index.finalize_stats();
    // Postings must account for every token of every document.
    std::uint64_t tf_total = 0;
    for (const auto& [t, n] : index.stats_.cf) tf_total += n;
    if (tf_total != index.stats_.total_tokens) fail(ErrorKind::format, path + ": postings disagree with lengths");
    return index;
}

namespace {

struct Accumulators {
    std::vector<double> score;
    std::vector<char> hit;
    std::vector<std::uint32_t> touched;

    void begin(std::size_t docs) {
        for (auto d : touched) {
            if (d < hit.size()) {
                hit[d] = 0;
                score[d] = 0.0;
            }
        }
        touched.clear();
        if (score.size() < docs) {
            score.resize(docs, 0.0);
            hit.resize(docs, 0);
        }
    }
};

}  // namespace

RankedList index_search(const InvertedIndex& index, const Query& query, const ScoringParams& params,
                        std::size_t top_k) {
    params.validate();
    QueryTerms terms = QueryTerms::parse(query.text);
    if (terms.empty()) fail(ErrorKind::config, "query '" + query.query_id + "' has no terms");

    thread_local Accumulators acc;
    acc.begin(index.document_count());
    const CollectionStats& stats = index.stats();

    // Terms arrive in ascending order, so each accumulator sums its
    // contributions in the same order as the scan.
    for (const auto& [term, multiplicity] : terms.terms) {
        auto list = index.postings(term);
        if (list.empty()) continue;
        const std::uint64_t cf = stats.collection_frequency(term);
        for (const Posting& p : list) {
            if (!acc.hit[p.doc]) {
                acc.hit[p.doc] = 1;
                acc.touched.push_back(p.doc);
            }
            acc.score[p.doc] += term_contribution(multiplicity, p.tf, cf, stats.total_tokens, index.doc_length(p.doc),
                                                  params.lambda);
        }
    }

    std::vector<std::pair<double, std::uint32_t>> candidates;
    candidates.reserve(acc.touched.size());
    for (std::uint32_t d : acc.touched) {
        double s = acc.score[d];
        if (params.length_prior) s += length_prior(index.doc_length(d));
        candidates.emplace_back(s, d);
    }
    // Ordinals follow doc_id order, so the ordinal breaks ties like doc_id.
    auto better = [](const auto& a, const auto& b) { return a.first != b.first ? a.first > b.first : a.second < b.second; };
    std::size_t keep = std::min(top_k, candidates.size());
    std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(keep), candidates.end(), better);

    RankedList list(top_k);
    for (std::size_t i = 0; i < keep; ++i) list.insert(ScoredDoc{index.doc_id(candidates[i].second), candidates[i].first});
    return list;
}

ResultSet index_search_all(const InvertedIndex& index, std::span<const Query> queries, const ScoringParams& params,
                           std::size_t top_k) {
    ResultSet results;
    for (const auto& q : queries) {
        if (!results.emplace(q.query_id, index_search(index, q, params, top_k)).second)
            fail(ErrorKind::integrity, "duplicate query_id '" + q.query_id + "'");
    }
    return results;
}

}  // namespace mirex
