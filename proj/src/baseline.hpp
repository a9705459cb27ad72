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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "hash.hpp"
#include "scoring.hpp"
#include "search.hpp"
#include "stats.hpp"

namespace mirex {

struct Posting {
    std::uint32_t doc;  // ordinal in doc_id order
    std::uint32_t tf;

    friend bool operator==(const Posting&, const Posting&) = default;
};

/// In-memory inverted index over the same tokenization as the scan. Documents
/// are numbered in ascending doc_id order, so postings sorted by ordinal are
/// sorted by doc_id.
class InvertedIndex {
  public:
    static InvertedIndex build(const Corpus& shards, bool strip_html = false);

    void save(const std::string& path) const;
    static InvertedIndex load(const std::string& path);

    const CollectionStats& stats() const noexcept { return stats_; }
    std::size_t document_count() const noexcept { return doc_ids_.size(); }
    const std::string& doc_id(std::uint32_t ordinal) const { return doc_ids_[ordinal]; }
    std::uint64_t doc_length(std::uint32_t ordinal) const { return doc_lengths_[ordinal]; }
    std::span<const Posting> postings(std::string_view term) const;
    std::size_t term_count() const noexcept { return postings_.size(); }

    friend bool operator==(const InvertedIndex&, const InvertedIndex&) = default;

  private:
    void finalize_stats();

    std::vector<std::string> doc_ids_;
    std::vector<std::uint64_t> doc_lengths_;
    StringMap<std::vector<Posting>> postings_;
    CollectionStats stats_;
};

/// Term-at-a-time evaluation of one query against the index, returning the
/// exact top K under the shared ranking order.
RankedList index_search(const InvertedIndex& index, const Query& query, const ScoringParams& params,
                        std::size_t top_k);

/// index_search over a whole query set, keyed like sequential_search output.
ResultSet index_search_all(const InvertedIndex& index, std::span<const Query> queries, const ScoringParams& params,
                           std::size_t top_k);

}  // namespace mirex
