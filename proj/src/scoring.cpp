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

#include "scoring.hpp"

#include <algorithm>
#include <map>

#include "error.hpp"
#include "hash.hpp"
#include "text.hpp"

namespace mirex {

void ScoringParams::validate() const {
    if (!(lambda > 0.0 && lambda < 1.0)) {
        fail(ErrorKind::config, "lambda must lie strictly between 0 and 1, got " + std::to_string(lambda));
    }
}

QueryTerms QueryTerms::parse(std::string_view query_text) {
    std::map<std::string, std::uint32_t, std::less<>> counts;
    text::for_each_token(query_text, [&](std::string_view t) {
        auto it = counts.find(t);
        if (it == counts.end()) {
            counts.emplace(std::string(t), 1);
        } else {
            ++it->second;
        }
    });
    QueryTerms q;
    q.terms.assign(counts.begin(), counts.end());
    return q;
}

double length_prior(std::uint64_t doc_length) { return std::log(static_cast<double>(doc_length)); }

std::optional<double> score_document(const QueryTerms& query, std::span<const std::string> doc_tokens,
                                     const CollectionStats& stats, const ScoringParams& params) {
    if (doc_tokens.empty()) return std::nullopt;
    StringMap<std::uint64_t> tf;
    for (const auto& t : doc_tokens) ++tf[t];

    double score = 0.0;
    bool matched = false;
    for (const auto& [term, multiplicity] : query.terms) {
        auto it = tf.find(term);
        if (it == tf.end()) continue;
        std::uint64_t cf = stats.collection_frequency(term);
        if (cf == 0) continue;
        if (stats.total_tokens == 0) {
            fail(ErrorKind::config, "collection statistics carry no token total");
        }
        score += term_contribution(multiplicity, it->second, cf, stats.total_tokens, doc_tokens.size(),
                                   params.lambda);
        matched = true;
    }
    if (!matched) return std::nullopt;
    if (params.length_prior) score += length_prior(doc_tokens.size());
    return score;
}

std::optional<double> score_document(const Query& query, std::span<const std::string> doc_tokens,
                                     const CollectionStats& stats, const ScoringParams& params) {
    return score_document(QueryTerms::parse(query.text), doc_tokens, stats, params);
}

std::vector<ScoredDoc> rank_order_check(const Query& query, std::span<const Document> docs,
                                        const CollectionStats& stats, const ScoringParams& params,
                                        bool strip_html) {
    QueryTerms terms = QueryTerms::parse(query.text);
    std::vector<ScoredDoc> ranked;
    for (const auto& doc : docs) {
        std::vector<std::string> tokens;
        for_each_document_token(doc, strip_html, [&](std::string_view t) { tokens.emplace_back(t); });
        if (auto s = score_document(terms, tokens, stats, params)) ranked.push_back({doc.doc_id, *s});
    }
    std::sort(ranked.begin(), ranked.end(), [](const ScoredDoc& a, const ScoredDoc& b) { return outranks(a, b); });
    return ranked;
}

}  // namespace mirex
