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

#include "search.hpp"

#include <atomic>
#include <set>

#include "hash.hpp"
#include "stats.hpp"

namespace mirex {

namespace {

using Candidate = BasicScoredDoc<std::string_view>;
using CandidateList = BasicRankedList<std::string_view>;

struct SearchRecord {
    std::uint32_t query;
    std::vector<Candidate> entries;

    friend bool operator==(const SearchRecord&, const SearchRecord&) = default;
};

struct QueryIndexHash {
    std::size_t operator()(std::uint32_t q) const noexcept { return q; }
};

using SearchJob = engine::Job<std::uint32_t, Candidate, SearchRecord, QueryIndexHash>;

// The query set compiled once before the scan. Query terms from all queries
// form one vocabulary; term ids follow ascending term order so iterating a
// query's term ids in increasing order sums contributions in ascending term
// order.
struct CompiledQueries {
    StringMap<std::uint32_t> vocabulary;
    std::vector<std::uint64_t> cf;                                             // by term id
    std::vector<std::vector<std::uint32_t>> queries_with_term;                 // by term id
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> terms;   // by query: (term id, m)
};

CompiledQueries compile(std::span<const Query> sorted, const CollectionStats& stats) {
    std::vector<QueryTerms> parsed;
    parsed.reserve(sorted.size());
    std::set<std::string, std::less<>> all_terms;
    for (const auto& q : sorted) {
        parsed.push_back(QueryTerms::parse(q.text));
        if (parsed.back().empty()) fail(ErrorKind::config, "query '" + q.query_id + "' has no terms");
        for (const auto& [t, m] : parsed.back().terms) all_terms.insert(t);
    }
    CompiledQueries c;
    c.vocabulary.reserve(all_terms.size());
    for (const auto& t : all_terms) {
        c.vocabulary.emplace(t, static_cast<std::uint32_t>(c.cf.size()));
        c.cf.push_back(stats.collection_frequency(t));
    }
    c.queries_with_term.resize(all_terms.size());
    c.terms.resize(sorted.size());
    for (std::uint32_t q = 0; q < parsed.size(); ++q) {
        for (const auto& [t, m] : parsed[q].terms) {
            std::uint32_t id = c.vocabulary.find(t)->second;
            c.terms[q].emplace_back(id, m);
            c.queries_with_term[id].push_back(q);
        }
    }
    return c;
}

// Per-thread scratch for one document. tf and marks are kept zeroed between
// documents; begin() repairs them if a previous document was interrupted.
struct Scratch {
    std::vector<std::uint32_t> tf;
    std::vector<std::uint32_t> touched;
    std::vector<char> marked;
    std::vector<std::uint32_t> candidates;

    void begin(std::size_t vocab, std::size_t queries) {
        for (auto t : touched) {
            if (t < tf.size()) tf[t] = 0;
        }
        for (auto q : candidates) {
            if (q < marked.size()) marked[q] = 0;
        }
        touched.clear();
        candidates.clear();
        if (tf.size() < vocab) tf.resize(vocab, 0);
        if (marked.size() < queries) marked.resize(queries, 0);
    }
};

}  // namespace

SearchResult sequential_search(const Corpus& shards, std::span<const Query> queries, const CollectionStats& stats,
                               const SearchOptions& options) {
    options.scoring.validate();
    if (queries.empty()) fail(ErrorKind::config, "empty query set");
    if (options.top_k == 0) fail(ErrorKind::config, "top_k must be positive");
    if (stats.total_tokens == 0 && stats.doc_count > 0) fail(ErrorKind::config, "statistics carry no token total");

    std::vector<Query> sorted(queries.begin(), queries.end());
    std::sort(sorted.begin(), sorted.end(), [](const Query& a, const Query& b) { return a.query_id < b.query_id; });
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i].query_id == sorted[i - 1].query_id)
            fail(ErrorKind::integrity, "duplicate query_id '" + sorted[i].query_id + "'");
    }

    const CompiledQueries compiled = compile(sorted, stats);
    const std::size_t k = options.top_k;
    const double lambda = options.scoring.lambda;
    const bool prior = options.scoring.length_prior;
    const bool strip = options.strip_html;
    const std::uint64_t total_tokens = stats.total_tokens;
    std::atomic<std::uint64_t> tokenized{0};

    SearchJob job;
    job.map = [&](const Document& doc, SearchJob::emitter_type& out) {
        thread_local Scratch scratch;
        scratch.begin(compiled.cf.size(), compiled.terms.size());

        std::uint64_t length = 0;
        for_each_document_token(doc, strip, [&](std::string_view token) {
            ++length;
            auto it = compiled.vocabulary.find(token);
            if (it == compiled.vocabulary.end()) return;
            std::uint32_t id = it->second;
            if (scratch.tf[id]++ == 0) scratch.touched.push_back(id);
        });
        tokenized.fetch_add(1, std::memory_order_relaxed);

        for (std::uint32_t id : scratch.touched) {
            if (compiled.cf[id] == 0) continue;
            for (std::uint32_t q : compiled.queries_with_term[id]) {
                if (!scratch.marked[q]) {
                    scratch.marked[q] = 1;
                    scratch.candidates.push_back(q);
                }
            }
        }
        for (std::uint32_t q : scratch.candidates) {
            double score = 0.0;
            for (const auto& [id, m] : compiled.terms[q]) {
                std::uint32_t tf = scratch.tf[id];
                if (tf == 0 || compiled.cf[id] == 0) continue;
                score += term_contribution(m, tf, compiled.cf[id], total_tokens, length, lambda);
            }
            if (prior) score += length_prior(length);
            out.emit(q, Candidate{doc.doc_id, score});
        }
    };

    // The same bounded-list logic serves as combiner and reducer.
    auto top_k = [k](std::vector<Candidate> values) {
        CandidateList list(k);
        for (auto& v : values) list.insert(v);
        return std::move(list).release();
    };
    job.combine = [top_k](const std::uint32_t&, std::vector<Candidate> values) { return top_k(std::move(values)); };
    job.reduce = [top_k](const std::uint32_t& q, std::vector<Candidate> values, std::vector<SearchRecord>& out) {
        out.push_back(SearchRecord{q, top_k(std::move(values))});
    };
    job.value_less = [](const Candidate& a, const Candidate& b) { return outranks(a, b); };
    job.combine_threshold = std::max(options.combine_threshold, k);

    auto run = engine::run_job(job, shards, engine::RunOptions{options.worker_count, options.use_combiner});

    SearchResult result;
    for (const auto& q : sorted) result.results.emplace(q.query_id, RankedList(k));
    for (const auto& record : run.output) {
        RankedList& list = result.results.at(sorted[record.query].query_id);
        for (const auto& e : record.entries) list.insert(ScoredDoc{std::string(e.doc_id), e.score});
    }
    result.shuffle.records_emitted_by_maps = run.shuffle.records_emitted_by_maps;
    result.shuffle.records_after_combine = run.shuffle.records_after_combine;
    for (const auto& [q, n] : run.shuffle.per_key_after_combine) {
        result.shuffle.per_key_after_combine.emplace(sorted[q].query_id, n);
    }
    result.documents_tokenized = tokenized.load();
    return result;
}

}  // namespace mirex
