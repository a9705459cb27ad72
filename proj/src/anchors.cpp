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

#include "anchors.hpp"

#include <algorithm>
#include <tuple>

#include "error.hpp"
#include "hash.hpp"
#include "html.hpp"
#include "text.hpp"
#include "url.hpp"

namespace mirex {

namespace {

struct AnchorValue {
    std::string source_doc_id;
    std::uint32_t ordinal;
    std::string text;

    friend bool operator==(const AnchorValue&, const AnchorValue&) = default;
};

using AnchorJob = engine::Job<std::string, AnchorValue, Document>;

}  // namespace

std::string truncate_tokens(const std::string& text, std::size_t max_tokens) {
    if (max_tokens == 0) return text;
    // Walk the text once, tracking where the max_tokens-th token ends.
    std::size_t count = 0;
    std::size_t pos = 0;
    bool in_token = false;
    while (pos < text.size()) {
        std::size_t start = pos;
        char32_t cp = text::decode_utf8(text, pos);
        bool alnum = text::is_alnum(cp);
        if (alnum && !in_token) {
            if (count == max_tokens) return html::collapse_whitespace(std::string_view(text).substr(0, start));
            ++count;
        }
        in_token = alnum;
    }
    return text;
}

std::vector<AnchorPair> extract_anchors(const Document& doc, std::size_t max_anchor_tokens) {
    std::vector<AnchorPair> pairs;
    std::optional<std::string_view> base;
    if (!doc.url.empty()) base = doc.url;
    std::uint32_t ordinal = 0;
    for (auto& raw : html::scan_anchors(doc.text)) {
        std::uint32_t this_ordinal = ordinal++;
        auto target = normalize_url(raw.href, base);
        if (!target) continue;
        pairs.push_back(AnchorPair{std::move(*target), truncate_tokens(raw.text, max_anchor_tokens), doc.doc_id,
                                   this_ordinal});
    }
    return pairs;
}

AnchorCorpus build_anchor_corpus(const Corpus& shards, const AnchorOptions& options) {
    // Join table: normalized URL -> (doc_id, original URL).
    StringMap<const Document*> by_url;
    std::size_t total_docs = 0;
    for (const auto& shard : shards) {
        for (const auto& doc : shard.records) {
            ++total_docs;
            if (doc.url.empty()) continue;
            auto key = normalize_url(doc.url);
            if (!key) continue;
            auto [it, inserted] = by_url.emplace(std::move(*key), &doc);
            if (!inserted) {
                fail(ErrorKind::integrity, "URL '" + it->first + "' maps to both '" + it->second->doc_id + "' and '" +
                                               doc.doc_id + "'");
            }
        }
    }

    const std::size_t max_tokens = options.max_anchor_tokens;
    AnchorJob job;
    job.map = [max_tokens](const Document& doc, AnchorJob::emitter_type& out) {
        std::optional<std::string> self;
        if (!doc.url.empty()) self = normalize_url(doc.url);
        for (auto& pair : extract_anchors(doc, max_tokens)) {
            if (self && pair.target_url == *self) continue;
            if (pair.anchor_text.empty()) continue;
            out.emit(std::move(pair.target_url),
                     AnchorValue{std::move(pair.source_doc_id), pair.ordinal, std::move(pair.anchor_text)});
        }
    };
    job.reduce = [&by_url](const std::string& target, std::vector<AnchorValue> values, std::vector<Document>& out) {
        auto it = by_url.find(target);
        if (it == by_url.end()) return;
        Document anchor_doc;
        anchor_doc.doc_id = it->second->doc_id;
        anchor_doc.url = it->second->url;
        for (const auto& v : values) {
            if (!anchor_doc.text.empty()) anchor_doc.text += ' ';
            anchor_doc.text += v.text;
        }
        out.push_back(std::move(anchor_doc));
    };
    job.value_less = [](const AnchorValue& a, const AnchorValue& b) {
        return std::tie(a.source_doc_id, a.ordinal, a.text) < std::tie(b.source_doc_id, b.ordinal, b.text);
    };

    auto run = engine::run_job(job, shards, engine::RunOptions{options.worker_count, options.use_combiner});

    AnchorCorpus result;
    result.documents = std::move(run.output);
    std::sort(result.documents.begin(), result.documents.end(),
              [](const Document& a, const Document& b) { return a.doc_id < b.doc_id; });
    result.coverage = total_docs == 0 ? 0.0 : static_cast<double>(result.documents.size()) / static_cast<double>(total_docs);
    result.shuffle = std::move(run.shuffle);
    return result;
}

}  // namespace mirex
