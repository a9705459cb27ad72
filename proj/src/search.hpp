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

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "engine.hpp"
#include "error.hpp"
#include "scoring.hpp"

namespace mirex {

/// Bounded ranked list of capacity K, best entry first. Ordering is
/// (score desc, doc_id asc); a candidate enters a full list only if it
/// outranks the current last entry, which is then evicted.
template <class Id>
class BasicRankedList {
    struct IdHash {
        using is_transparent = void;
        std::size_t operator()(std::string_view s) const noexcept { return std::hash<std::string_view>{}(s); }
    };

  public:
    using Entry = BasicScoredDoc<Id>;

    explicit BasicRankedList(std::size_t capacity = 1000) : capacity_(capacity) {
        if (capacity_ == 0) fail(ErrorKind::config, "ranked list capacity must be positive");
    }

    /// Returns true if the candidate was kept. Throws an integrity error when
    /// the doc_id is already in the list.
    bool insert(Entry candidate) {
        if (!(candidate.score > 0.0)) fail(ErrorKind::integrity, "ranked list only accepts positive scores");
        if (members_.count(std::string_view(candidate.doc_id)) != 0) {
            fail(ErrorKind::integrity, "doc_id '" + std::string(std::string_view(candidate.doc_id)) +
                                           "' inserted twice into a ranked list");
        }
        if (full() && !outranks(candidate, entries_.back())) return false;
        auto pos = std::upper_bound(entries_.begin(), entries_.end(), candidate,
                                    [](const Entry& a, const Entry& b) { return outranks(a, b); });
        auto inserted = entries_.insert(pos, std::move(candidate));
        members_.insert(inserted->doc_id);
        if (entries_.size() > capacity_) {
            members_.erase(members_.find(std::string_view(entries_.back().doc_id)));
            entries_.pop_back();
        }
        return true;
    }

    std::size_t capacity() const noexcept { return capacity_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    bool full() const noexcept { return entries_.size() >= capacity_; }
    const std::vector<Entry>& entries() const noexcept { return entries_; }

    /// Score of the last entry; 0 while the list is not full.
    double threshold() const noexcept { return full() ? entries_.back().score : 0.0; }

    std::vector<Entry> release() && { return std::move(entries_); }

    friend bool operator==(const BasicRankedList& a, const BasicRankedList& b) {
        return a.capacity_ == b.capacity_ && a.entries_ == b.entries_;
    }

  private:
    std::size_t capacity_;
    std::vector<Entry> entries_;
    std::unordered_set<Id, IdHash, std::equal_to<>> members_;
};

using RankedList = BasicRankedList<std::string>;

/// Per-query results keyed by query_id (ascending).
using ResultSet = std::map<std::string, RankedList>;

struct SearchOptions {
    ScoringParams scoring;
    std::size_t top_k = 1000;
    std::size_t worker_count = 1;
    bool use_combiner = true;
    bool strip_html = false;
    std::size_t combine_threshold = 4096;
};

struct SearchResult {
    ResultSet results;
    engine::ShuffleStats<std::string> shuffle;  // keyed by query_id
    std::uint64_t documents_tokenized = 0;
};

/// One pass over every document, scoring the whole query set, keeping the
/// top K per query. Every query appears in the result, possibly empty.
SearchResult sequential_search(const Corpus& shards, std::span<const Query> queries, const CollectionStats& stats,
                               const SearchOptions& options);

}  // namespace mirex
