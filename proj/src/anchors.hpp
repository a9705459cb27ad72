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
#include <string>
#include <vector>

#include "corpus.hpp"
#include "engine.hpp"

namespace mirex {

struct AnchorPair {
    std::string target_url;  // normalized
    std::string anchor_text;
    std::string source_doc_id;
    std::uint32_t ordinal = 0;  // position among the source's anchors

    friend bool operator==(const AnchorPair&, const AnchorPair&) = default;
};

struct AnchorOptions {
    std::size_t worker_count = 1;
    std::size_t max_anchor_tokens = 512;
    bool use_combiner = true;
};

/// Anchors of one page with targets normalized against the page URL.
/// Anchors whose target cannot be normalized are skipped but still consume
/// an ordinal, so ordinals reflect position in the page.
std::vector<AnchorPair> extract_anchors(const Document& doc, std::size_t max_anchor_tokens = 512);

/// Cuts text after its max_tokens-th token (0 means no limit).
std::string truncate_tokens(const std::string& text, std::size_t max_tokens);

struct AnchorCorpus {
    std::vector<Document> documents;  // ascending doc_id; url is the target's URL
    double coverage = 0.0;            // documents.size() / corpus size
    engine::ShuffleStats<std::string> shuffle;
};

/// Groups anchor text by link target and joins targets to corpus documents.
/// Self-links and links to pages outside the corpus are dropped; texts are
/// concatenated by (source doc_id, ordinal).
AnchorCorpus build_anchor_corpus(const Corpus& shards, const AnchorOptions& options = {});

}  // namespace mirex
