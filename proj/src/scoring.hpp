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

#pragma once

// Query likelihood with linear smoothing and a document-length prior.
//
//   score(q, d) = sum over distinct query terms t with tf(t,d) > 0, cf(t) > 0 of
//                   m(t) * log(1 + lambda * tf(t,d) * |C| / ((1 - lambda) * cf(t) * |d|))
//               + log(|d|)                      (when the length prior is on)
//
// This is the smoothed log-likelihood with the rank-invariant |q| log(1-lambda)
// and prior normalizer dropped, so every matching document scores above zero
// and non-matching documents have no score at all. Terms are summed in
// ascending term order and the prior is added last; the scan and the index
// searcher follow the same order and produce bit-identical values.

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "corpus.hpp"
#include "stats.hpp"

namespace mirex {

struct ScoringParams {
    double lambda = 0.85;
    bool length_prior = true;

    /// Throws a config error unless 0 < lambda < 1.
    void validate() const;
};

/// Distinct query terms in ascending order with their multiplicities.
struct QueryTerms {
    std::vector<std::pair<std::string, std::uint32_t>> terms;

    static QueryTerms parse(std::string_view query_text);
    bool empty() const noexcept { return terms.empty(); }
};

/// One matching term's contribution; strictly positive for tf, cf, |d| >= 1.
/// tf / |d| is divided on its own: division is correctly rounded, so documents
/// whose ratios are equal get bit-identical contributions and tie exactly.
inline double term_contribution(std::uint32_t multiplicity, std::uint64_t tf, std::uint64_t cf,
                                std::uint64_t total_tokens, std::uint64_t doc_length, double lambda) {
    const double weight = (lambda * static_cast<double>(total_tokens)) / ((1.0 - lambda) * static_cast<double>(cf));
    const double ratio = static_cast<double>(tf) / static_cast<double>(doc_length);
    return static_cast<double>(multiplicity) * std::log1p(weight * ratio);
}

double length_prior(std::uint64_t doc_length);

/// Scores one document: nullopt when no query term with cf > 0 occurs in the
/// document, otherwise a strictly positive score.
std::optional<double> score_document(const QueryTerms& query, std::span<const std::string> doc_tokens,
                                     const CollectionStats& stats, const ScoringParams& params);

std::optional<double> score_document(const Query& query, std::span<const std::string> doc_tokens,
                                     const CollectionStats& stats, const ScoringParams& params);

template <class Id>
struct BasicScoredDoc {
    Id doc_id;
    double score = 0.0;

    friend bool operator==(const BasicScoredDoc&, const BasicScoredDoc&) = default;
};

using ScoredDoc = BasicScoredDoc<std::string>;

/// Ranking order: higher score first, ties by ascending doc_id.
template <class A, class B>
bool outranks(const BasicScoredDoc<A>& a, const BasicScoredDoc<B>& b) {
    if (a.score != b.score) return a.score > b.score;
    return std::string_view(a.doc_id) < std::string_view(b.doc_id);
}

/// Scores every document against query and returns the matches in ranking
/// order. Exhaustive; meant for tests and tiny corpora.
std::vector<ScoredDoc> rank_order_check(const Query& query, std::span<const Document> docs,
                                        const CollectionStats& stats, const ScoringParams& params,
                                        bool strip_html = false);

}  // namespace mirex
