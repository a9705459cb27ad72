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
#include <utility>
#include <vector>

#include "corpus.hpp"
#include "search.hpp"

namespace mirex {

struct RunRow {
    std::string query_id;
    std::string doc_id;
    std::uint32_t rank = 0;
    double score = 0.0;

    friend bool operator==(const RunRow&, const RunRow&) = default;
};

/// A TREC run: `query_id Q0 doc_id rank score run_tag` per line.
struct RunFile {
    std::string run_tag;
    std::vector<RunRow> rows;

    friend bool operator==(const RunFile&, const RunFile&) = default;

    /// Rows of each query in rank order, keyed by query_id.
    std::map<std::string, std::vector<const RunRow*>> by_query() const;
};

/// Relevance grades; grade >= 1 counts as relevant.
struct Qrels {
    std::map<std::string, std::map<std::string, int>> judgments;  // query -> doc -> grade

    std::size_t relevant_count(const std::string& query_id) const;
    bool is_relevant(const std::string& query_id, const std::string& doc_id) const;
};

/// Renders results in ascending query_id order, scores with 6 decimals.
std::string write_run(const ResultSet& results, const std::string& run_tag);

/// Renders rows in their stored order.
std::string format_run(const RunFile& run);

/// Parses and validates a run: exact column count, consecutive ranks from 1
/// per query, non-increasing scores, a single run tag.
RunFile parse_run(std::string_view text);
RunFile read_run(const std::string& path);

Qrels parse_qrels(std::string_view text);
Qrels read_qrels(const std::string& path);
std::string write_qrels(const Qrels& qrels);

struct QueryEvaluation {
    std::string query_id;
    std::size_t retrieved = 0;
    std::size_t relevant = 0;
    std::size_t relevant_retrieved = 0;
    double p5 = 0.0;
    double p10 = 0.0;
    double p20 = 0.0;
    double average_precision = 0.0;
};

struct Evaluation {
    std::vector<QueryEvaluation> per_query;  // judged queries, ascending id
    double mean_p5 = 0.0;
    double mean_p10 = 0.0;
    double mean_p20 = 0.0;
    double map = 0.0;
    std::vector<std::string> warnings;
};

struct PrecisionResult {
    std::map<std::string, double> per_query;
    double mean = 0.0;
    std::vector<std::string> warnings;
};

/// |relevant in top min(k, n)| / k for each judged query, and the mean over
/// judged queries. Run queries without judgments are reported as warnings.
PrecisionResult precision_at_k(const RunFile& run, const Qrels& qrels, std::size_t k);

/// Mean over judged queries of average precision down to cutoff.
double mean_average_precision(const RunFile& run, const Qrels& qrels, std::size_t cutoff = 1000,
                              std::vector<std::string>* warnings = nullptr);

Evaluation evaluate(const RunFile& run, const Qrels& qrels, std::size_t cutoff = 1000);

/// Fixed-width table: one row per query (optional) and an "all" row.
std::string format_evaluation(const Evaluation& e, bool per_query);

/// Judgments for synthetic queries: documents containing every query term
/// are relevant (grade 1); up to as many partial matches are judged 0.
Qrels synthetic_qrels(const Corpus& shards, std::span<const Query> queries, std::size_t max_relevant_per_query,
                      bool strip_html = false);

}  // namespace mirex
