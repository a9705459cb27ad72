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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace mirex {

/// The unit scanned by every job. doc_id is opaque and free of whitespace.
struct Document {
    std::string doc_id;
    std::string url;
    std::string text;

    friend bool operator==(const Document&, const Document&) = default;
};

struct Query {
    std::string query_id;
    std::string text;

    friend bool operator==(const Query&, const Query&) = default;
};

/// Split input for one mapper. Record i of the corpus lives in shard
/// i mod shard_count.
struct CorpusShard {
    std::size_t shard_index = 0;
    std::vector<Document> records;
};

using Corpus = std::vector<CorpusShard>;

/// Round-robin partition of docs into shard_count shards.
Corpus shard_documents(std::vector<Document> docs, std::size_t shard_count);

/// Restores the original record order of a round-robin sharded corpus.
std::vector<Document> flatten(const Corpus& shards);

std::size_t document_count(const Corpus& shards);

/// Reads `doc_id<TAB>url<TAB>text` lines (escaped, optionally gzipped).
/// Throws parse errors naming the line and integrity errors on duplicate ids.
Corpus read_corpus(const std::string& path, std::size_t shard_count);

void write_corpus(std::span<const Document> docs, const std::string& path);

/// Reads `query_id<TAB>text` lines, preserving file order.
std::vector<Query> read_queries(const std::string& path);

void write_queries(std::span<const Query> queries, const std::string& path);

bool valid_identifier(std::string_view id);

struct GeneratorOptions {
    double link_fraction = 0.5;   // share of documents that carry anchors
    std::size_t min_length = 6;   // tokens of running text, before markup
    std::size_t max_length = 300;
    double zipf_exponent = 1.07;
};

/// Deterministic synthetic web corpus: Zipf-distributed terms, log-uniform
/// document lengths, and HTML anchors pointing at other generated pages.
std::vector<Document> generate_synthetic(std::size_t doc_count, std::size_t vocab_size,
                                         std::uint64_t seed,
                                         const GeneratorOptions& options = {});

/// Queries of 1-3 terms drawn from the same vocabulary and term distribution.
std::vector<Query> generate_queries(std::size_t query_count, std::size_t vocab_size,
                                    std::uint64_t seed,
                                    const GeneratorOptions& options = {});

/// The generator's term for vocabulary rank `rank`.
std::string synthetic_term(std::size_t rank);

/// URL assigned to synthetic document `index` of a corpus with doc_count docs.
std::string synthetic_url(std::size_t index, std::size_t doc_count);

}  // namespace mirex
