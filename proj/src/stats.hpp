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
#include <map>
#include <string>
#include <string_view>

#include "corpus.hpp"
#include "engine.hpp"
#include "html.hpp"
#include "text.hpp"

namespace mirex {

/// Corpus-wide counts consumed by the language model.
struct CollectionStats {
    std::uint64_t total_tokens = 0;  // |C|
    std::uint64_t doc_count = 0;
    std::map<std::string, std::uint64_t, std::less<>> cf;
    std::map<std::string, std::uint64_t, std::less<>> doc_len;

    /// Collection frequency of term, 0 when absent.
    std::uint64_t collection_frequency(std::string_view term) const {
        auto it = cf.find(term);
        return it == cf.end() ? 0 : it->second;
    }

    friend bool operator==(const CollectionStats&, const CollectionStats&) = default;
};

struct StatsOptions {
    std::size_t worker_count = 1;
    bool strip_html = false;
    bool use_combiner = true;
};

/// Tokenizes the representation every job searches: the raw text, or its
/// tag-stripped form when strip_html is set.
template <class Fn>
void for_each_document_token(const Document& doc, bool strip_html, Fn&& fn) {
    if (strip_html) {
        text::for_each_token(html::strip_tags(doc.text), fn);
    } else {
        text::for_each_token(doc.text, fn);
    }
}

/// Shuffle key of the statistics job: a term or a document length.
struct StatKey {
    enum Kind : char { term = 'T', length = 'D' };
    Kind kind;
    std::string name;

    friend auto operator<=>(const StatKey&, const StatKey&) = default;
    friend bool operator==(const StatKey&, const StatKey&) = default;
};

struct StatKeyHash {
    std::size_t operator()(const StatKey& k) const noexcept {
        return std::hash<std::string_view>{}(k.name) * 31 + static_cast<std::size_t>(k.kind);
    }
};

/// Counts every term and document length in one engine pass.
CollectionStats compute_stats(const Corpus& shards, const StatsOptions& options = {},
                              engine::ShuffleStats<StatKey>* shuffle = nullptr);

void save_stats(const CollectionStats& stats, const std::string& path);
CollectionStats load_stats(const std::string& path);

}  // namespace mirex
