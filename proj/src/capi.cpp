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

#include "mirex/mirex.h"

#include <new>
#include <string>
#include <vector>

#include "anchors.hpp"
#include "baseline.hpp"
#include "bench.hpp"
#include "corpus.hpp"
#include "error.hpp"
#include "eval.hpp"
#include "io.hpp"
#include "search.hpp"
#include "stats.hpp"

struct mirex_corpus {
    mirex::Corpus shards;
};

struct mirex_queries {
    std::vector<mirex::Query> queries;
};

struct mirex_stats {
    mirex::CollectionStats stats;
};

struct mirex_index {
    mirex::InvertedIndex index;
};

struct mirex_results {
    mirex::ResultSet results;
    std::vector<std::pair<const std::string*, const mirex::RankedList*>> order;
    mirex::engine::ShuffleStats<std::string> shuffle;
    std::uint64_t documents_tokenized = 0;

    void index_queries() {
        order.clear();
        for (const auto& [id, list] : results) order.emplace_back(&id, &list);
    }
};

struct mirex_anchor_corpus {
    mirex::AnchorCorpus anchors;
};

struct mirex_evaluation {
    mirex::Evaluation evaluation;
    std::string table;
};

struct mirex_bench {
    std::vector<mirex::BenchPoint> points;
    std::string csv;
};

namespace {

thread_local std::string last_error;

mirex_status status_for(mirex::ErrorKind kind) {
    switch (kind) {
        case mirex::ErrorKind::io: return MIREX_ERROR_IO;
        case mirex::ErrorKind::parse: return MIREX_ERROR_PARSE;
        case mirex::ErrorKind::integrity: return MIREX_ERROR_INTEGRITY;
        case mirex::ErrorKind::format: return MIREX_ERROR_FORMAT;
        case mirex::ErrorKind::config: return MIREX_ERROR_CONFIG;
        case mirex::ErrorKind::job: return MIREX_ERROR_JOB;
    }
    return MIREX_ERROR_INTERNAL;
}

// Runs body, translating exceptions into status codes and the thread-local
// error message.
template <class Body>
mirex_status guarded(Body&& body) {
    last_error.clear();
    try {
        body();
        return MIREX_OK;
    } catch (const mirex::Error& e) {
        last_error = e.what();
        return status_for(e.kind());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return MIREX_ERROR_INTERNAL;
    } catch (const std::exception& e) {
        last_error = e.what();
        return MIREX_ERROR_INTERNAL;
    } catch (...) {
        last_error = "unknown error";
        return MIREX_ERROR_INTERNAL;
    }
}

mirex_status invalid(const char* what) {
    last_error = std::string("invalid argument: ") + what;
    return MIREX_ERROR_INVALID_ARGUMENT;
}

mirex::SearchOptions to_search_options(const mirex_search_options* o) {
    mirex_search_options defaults;
    mirex_search_options_init(&defaults);
    if (o == nullptr) o = &defaults;
    mirex::SearchOptions s;
    s.scoring.lambda = o->lambda;
    s.scoring.length_prior = o->length_prior != 0;
    s.top_k = o->top_k;
    s.worker_count = o->worker_count;
    s.use_combiner = o->use_combiner != 0;
    s.strip_html = o->strip_html != 0;
    s.combine_threshold = o->combine_threshold;
    return s;
}

const mirex::RankedList* list_at(const mirex_results* r, size_t query) {
    if (r == nullptr || query >= r->order.size()) return nullptr;
    return r->order[query].second;
}

}  // namespace

extern "C" {

const char* mirex_version(void) { return "1.0.0"; }

const char* mirex_last_error(void) { return last_error.c_str(); }

const char* mirex_status_name(mirex_status status) {
    switch (status) {
        case MIREX_OK: return "ok";
        case MIREX_ERROR_INVALID_ARGUMENT: return "invalid argument";
        case MIREX_ERROR_CONFIG: return "configuration error";
        case MIREX_ERROR_IO: return "I/O error";
        case MIREX_ERROR_PARSE: return "parse error";
        case MIREX_ERROR_INTEGRITY: return "integrity error";
        case MIREX_ERROR_FORMAT: return "format error";
        case MIREX_ERROR_JOB: return "job error";
        case MIREX_ERROR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

// ---- corpus ----

void mirex_generator_options_init(mirex_generator_options* options) {
    if (options == nullptr) return;
    mirex::GeneratorOptions d;
    options->link_fraction = d.link_fraction;
    options->min_length = d.min_length;
    options->max_length = d.max_length;
}

mirex_status mirex_corpus_read(const char* path, size_t shard_count, mirex_corpus** out) {
    if (path == nullptr || out == nullptr) return invalid("path and out must be non-null");
    return guarded([&] {
        auto c = std::make_unique<mirex_corpus>();
        c->shards = mirex::read_corpus(path, shard_count);
        *out = c.release();
    });
}

mirex_status mirex_corpus_generate(size_t doc_count, size_t vocab_size, uint64_t seed,
                                   const mirex_generator_options* options, size_t shard_count, mirex_corpus** out) {
    if (out == nullptr) return invalid("out must be non-null");
    return guarded([&] {
        mirex::GeneratorOptions g;
        if (options != nullptr) {
            g.link_fraction = options->link_fraction;
            g.min_length = options->min_length;
            g.max_length = options->max_length;
        }
        auto c = std::make_unique<mirex_corpus>();
        c->shards = mirex::shard_documents(mirex::generate_synthetic(doc_count, vocab_size, seed, g), shard_count);
        *out = c.release();
    });
}

mirex_status mirex_corpus_write(const mirex_corpus* corpus, const char* path) {
    if (corpus == nullptr || path == nullptr) return invalid("corpus and path must be non-null");
    return guarded([&] {
        auto docs = mirex::flatten(corpus->shards);
        mirex::write_corpus(docs, path);
    });
}

size_t mirex_corpus_size(const mirex_corpus* corpus) {
    return corpus == nullptr ? 0 : mirex::document_count(corpus->shards);
}

size_t mirex_corpus_shard_count(const mirex_corpus* corpus) { return corpus == nullptr ? 0 : corpus->shards.size(); }

void mirex_corpus_free(mirex_corpus* corpus) { delete corpus; }

mirex_status mirex_queries_read(const char* path, mirex_queries** out) {
    if (path == nullptr || out == nullptr) return invalid("path and out must be non-null");
    return guarded([&] {
        auto q = std::make_unique<mirex_queries>();
        q->queries = mirex::read_queries(path);
        *out = q.release();
    });
}

mirex_status mirex_queries_generate(size_t query_count, size_t vocab_size, uint64_t seed, mirex_queries** out) {
    if (out == nullptr) return invalid("out must be non-null");
    return guarded([&] {
        auto q = std::make_unique<mirex_queries>();
        q->queries = mirex::generate_queries(query_count, vocab_size, seed);
        *out = q.release();
    });
}

mirex_status mirex_queries_write(const mirex_queries* queries, const char* path) {
    if (queries == nullptr || path == nullptr) return invalid("queries and path must be non-null");
    return guarded([&] { mirex::write_queries(queries->queries, path); });
}

size_t mirex_queries_size(const mirex_queries* queries) { return queries == nullptr ? 0 : queries->queries.size(); }

const char* mirex_queries_id(const mirex_queries* queries, size_t i) {
    if (queries == nullptr || i >= queries->queries.size()) return nullptr;
    return queries->queries[i].query_id.c_str();
}

const char* mirex_queries_text(const mirex_queries* queries, size_t i) {
    if (queries == nullptr || i >= queries->queries.size()) return nullptr;
    return queries->queries[i].text.c_str();
}

void mirex_queries_free(mirex_queries* queries) { delete queries; }

// ---- statistics ----

mirex_status mirex_stats_compute(const mirex_corpus* corpus, size_t worker_count, int strip_html, mirex_stats** out) {
    if (corpus == nullptr || out == nullptr) return invalid("corpus and out must be non-null");
    return guarded([&] {
        auto s = std::make_unique<mirex_stats>();
        mirex::StatsOptions options;
        options.worker_count = worker_count;
        options.strip_html = strip_html != 0;
        s->stats = mirex::compute_stats(corpus->shards, options);
        *out = s.release();
    });
}

mirex_status mirex_stats_load(const char* path, mirex_stats** out) {
    if (path == nullptr || out == nullptr) return invalid("path and out must be non-null");
    return guarded([&] {
        auto s = std::make_unique<mirex_stats>();
        s->stats = mirex::load_stats(path);
        *out = s.release();
    });
}

mirex_status mirex_stats_save(const mirex_stats* stats, const char* path) {
    if (stats == nullptr || path == nullptr) return invalid("stats and path must be non-null");
    return guarded([&] { mirex::save_stats(stats->stats, path); });
}

uint64_t mirex_stats_total_tokens(const mirex_stats* stats) { return stats ? stats->stats.total_tokens : 0; }
uint64_t mirex_stats_doc_count(const mirex_stats* stats) { return stats ? stats->stats.doc_count : 0; }
uint64_t mirex_stats_term_count(const mirex_stats* stats) { return stats ? stats->stats.cf.size() : 0; }

uint64_t mirex_stats_cf(const mirex_stats* stats, const char* term) {
    if (stats == nullptr || term == nullptr) return 0;
    return stats->stats.collection_frequency(term);
}

void mirex_stats_free(mirex_stats* stats) { delete stats; }

// ---- search ----

void mirex_search_options_init(mirex_search_options* options) {
    if (options == nullptr) return;
    mirex::SearchOptions d;
    options->lambda = d.scoring.lambda;
    options->length_prior = d.scoring.length_prior ? 1 : 0;
    options->top_k = d.top_k;
    options->worker_count = d.worker_count;
    options->use_combiner = d.use_combiner ? 1 : 0;
    options->strip_html = d.strip_html ? 1 : 0;
    options->combine_threshold = d.combine_threshold;
}

mirex_status mirex_search(const mirex_corpus* corpus, const mirex_queries* queries, const mirex_stats* stats,
                          const mirex_search_options* options, mirex_results** out) {
    if (corpus == nullptr || queries == nullptr || stats == nullptr || out == nullptr)
        return invalid("corpus, queries, stats and out must be non-null");
    return guarded([&] {
        auto search = mirex::sequential_search(corpus->shards, queries->queries, stats->stats,
                                               to_search_options(options));
        auto r = std::make_unique<mirex_results>();
        r->results = std::move(search.results);
        r->shuffle = std::move(search.shuffle);
        r->documents_tokenized = search.documents_tokenized;
        r->index_queries();
        *out = r.release();
    });
}

size_t mirex_results_query_count(const mirex_results* results) { return results ? results->order.size() : 0; }

const char* mirex_results_query_id(const mirex_results* results, size_t query) {
    if (results == nullptr || query >= results->order.size()) return nullptr;
    return results->order[query].first->c_str();
}

size_t mirex_results_size(const mirex_results* results, size_t query) {
    const auto* list = list_at(results, query);
    return list ? list->size() : 0;
}

const char* mirex_results_doc_id(const mirex_results* results, size_t query, size_t rank) {
    const auto* list = list_at(results, query);
    if (list == nullptr || rank >= list->size()) return nullptr;
    return list->entries()[rank].doc_id.c_str();
}

double mirex_results_score(const mirex_results* results, size_t query, size_t rank) {
    const auto* list = list_at(results, query);
    if (list == nullptr || rank >= list->size()) return 0.0;
    return list->entries()[rank].score;
}

mirex_status mirex_results_shuffle(const mirex_results* results, mirex_shuffle_stats* out) {
    if (results == nullptr || out == nullptr) return invalid("results and out must be non-null");
    out->records_emitted_by_maps = results->shuffle.records_emitted_by_maps;
    out->records_after_combine = results->shuffle.records_after_combine;
    out->max_records_per_key = results->shuffle.max_per_key();
    out->keys = results->shuffle.per_key_after_combine.size();
    out->documents_tokenized = results->documents_tokenized;
    return MIREX_OK;
}

uint64_t mirex_results_shuffle_for(const mirex_results* results, const char* query_id) {
    if (results == nullptr || query_id == nullptr) return 0;
    auto it = results->shuffle.per_key_after_combine.find(query_id);
    return it == results->shuffle.per_key_after_combine.end() ? 0 : it->second;
}

mirex_status mirex_results_write_run(const mirex_results* results, const char* run_tag, const char* path) {
    if (results == nullptr || run_tag == nullptr || path == nullptr)
        return invalid("results, run_tag and path must be non-null");
    return guarded([&] { mirex::io::write_text_file(path, mirex::write_run(results->results, run_tag)); });
}

void mirex_results_free(mirex_results* results) { delete results; }

// ---- baseline ----

mirex_status mirex_index_build(const mirex_corpus* corpus, int strip_html, mirex_index** out) {
    if (corpus == nullptr || out == nullptr) return invalid("corpus and out must be non-null");
    return guarded([&] {
        *out = new mirex_index{mirex::InvertedIndex::build(corpus->shards, strip_html != 0)};
    });
}

mirex_status mirex_index_load(const char* path, mirex_index** out) {
    if (path == nullptr || out == nullptr) return invalid("path and out must be non-null");
    return guarded([&] { *out = new mirex_index{mirex::InvertedIndex::load(path)}; });
}

mirex_status mirex_index_save(const mirex_index* index, const char* path) {
    if (index == nullptr || path == nullptr) return invalid("index and path must be non-null");
    return guarded([&] { index->index.save(path); });
}

size_t mirex_index_doc_count(const mirex_index* index) { return index ? index->index.document_count() : 0; }
size_t mirex_index_term_count(const mirex_index* index) { return index ? index->index.term_count() : 0; }

mirex_status mirex_index_search(const mirex_index* index, const mirex_queries* queries,
                                const mirex_search_options* options, mirex_results** out) {
    if (index == nullptr || queries == nullptr || out == nullptr)
        return invalid("index, queries and out must be non-null");
    return guarded([&] {
        auto o = to_search_options(options);
        if (o.top_k == 0) throw mirex::Error(mirex::ErrorKind::config, "top_k must be positive");
        if (queries->queries.empty()) throw mirex::Error(mirex::ErrorKind::config, "empty query set");
        auto r = std::make_unique<mirex_results>();
        r->results = mirex::index_search_all(index->index, queries->queries, o.scoring, o.top_k);
        r->index_queries();
        *out = r.release();
    });
}

void mirex_index_free(mirex_index* index) { delete index; }

// ---- anchors ----

mirex_status mirex_anchors_build(const mirex_corpus* corpus, size_t worker_count, size_t max_anchor_tokens,
                                 mirex_anchor_corpus** out) {
    if (corpus == nullptr || out == nullptr) return invalid("corpus and out must be non-null");
    return guarded([&] {
        mirex::AnchorOptions options;
        options.worker_count = worker_count;
        options.max_anchor_tokens = max_anchor_tokens;
        auto a = std::make_unique<mirex_anchor_corpus>();
        a->anchors = mirex::build_anchor_corpus(corpus->shards, options);
        *out = a.release();
    });
}

double mirex_anchors_coverage(const mirex_anchor_corpus* anchors) { return anchors ? anchors->anchors.coverage : 0.0; }

size_t mirex_anchors_size(const mirex_anchor_corpus* anchors) {
    return anchors ? anchors->anchors.documents.size() : 0;
}

mirex_status mirex_anchors_write(const mirex_anchor_corpus* anchors, const char* path) {
    if (anchors == nullptr || path == nullptr) return invalid("anchors and path must be non-null");
    return guarded([&] { mirex::write_corpus(anchors->anchors.documents, path); });
}

void mirex_anchors_free(mirex_anchor_corpus* anchors) { delete anchors; }

// ---- evaluation ----

mirex_status mirex_evaluate_files(const char* run_path, const char* qrels_path, mirex_evaluation** out) {
    if (run_path == nullptr || qrels_path == nullptr || out == nullptr)
        return invalid("run_path, qrels_path and out must be non-null");
    return guarded([&] {
        auto e = std::make_unique<mirex_evaluation>();
        e->evaluation = mirex::evaluate(mirex::read_run(run_path), mirex::read_qrels(qrels_path));
        *out = e.release();
    });
}

double mirex_evaluation_mean_p5(const mirex_evaluation* e) { return e ? e->evaluation.mean_p5 : 0.0; }
double mirex_evaluation_mean_p10(const mirex_evaluation* e) { return e ? e->evaluation.mean_p10 : 0.0; }
double mirex_evaluation_mean_p20(const mirex_evaluation* e) { return e ? e->evaluation.mean_p20 : 0.0; }
double mirex_evaluation_map(const mirex_evaluation* e) { return e ? e->evaluation.map : 0.0; }
size_t mirex_evaluation_query_count(const mirex_evaluation* e) { return e ? e->evaluation.per_query.size() : 0; }
size_t mirex_evaluation_warning_count(const mirex_evaluation* e) { return e ? e->evaluation.warnings.size() : 0; }

const char* mirex_evaluation_warning(const mirex_evaluation* e, size_t i) {
    if (e == nullptr || i >= e->evaluation.warnings.size()) return nullptr;
    return e->evaluation.warnings[i].c_str();
}

const char* mirex_evaluation_table(mirex_evaluation* e, int per_query) {
    if (e == nullptr) return nullptr;
    e->table = mirex::format_evaluation(e->evaluation, per_query != 0);
    return e->table.c_str();
}

void mirex_evaluation_free(mirex_evaluation* e) { delete e; }

mirex_status mirex_qrels_generate(const mirex_corpus* corpus, const mirex_queries* queries,
                                  size_t max_relevant_per_query, const char* path) {
    if (corpus == nullptr || queries == nullptr || path == nullptr)
        return invalid("corpus, queries and path must be non-null");
    return guarded([&] {
        auto qrels = mirex::synthetic_qrels(corpus->shards, queries->queries, max_relevant_per_query);
        mirex::io::write_text_file(path, mirex::write_qrels(qrels));
    });
}

// ---- benchmark ----

void mirex_bench_config_init(mirex_bench_config* config) {
    if (config == nullptr) return;
    mirex::BenchConfig d;
    config->sizes = nullptr;
    config->size_count = 0;
    config->trials = d.trials;
    config->seed = d.seed;
    config->nested = d.nested ? 1 : 0;
    config->shard_count = d.shard_count;
}

mirex_status mirex_bench_run(const char* corpus_path, const mirex_queries* pool, const mirex_stats* stats,
                             const mirex_bench_config* config, const mirex_search_options* options, mirex_bench** out) {
    if (corpus_path == nullptr || pool == nullptr || stats == nullptr || config == nullptr || out == nullptr)
        return invalid("corpus_path, pool, stats, config and out must be non-null");
    if (config->size_count > 0 && config->sizes == nullptr) return invalid("sizes must be non-null");
    return guarded([&] {
        mirex::BenchConfig c;
        c.sizes.assign(config->sizes, config->sizes + config->size_count);
        c.trials = config->trials;
        c.seed = config->seed;
        c.nested = config->nested != 0;
        c.shard_count = config->shard_count;
        c.search = to_search_options(options);
        auto b = std::make_unique<mirex_bench>();
        b->points = mirex::run_bench(corpus_path, pool->queries, stats->stats, c);
        b->csv = mirex::emit_csv(b->points);
        *out = b.release();
    });
}

const char* mirex_bench_csv(const mirex_bench* bench) { return bench ? bench->csv.c_str() : nullptr; }

static double bench_mean(const mirex_bench* bench, const char* system, size_t query_count, bool per_query) {
    if (bench == nullptr || system == nullptr) return -1.0;
    for (const auto& s : mirex::summarize(bench->points)) {
        if (mirex::to_string(s.system) == system && s.query_count == query_count)
            return per_query ? s.mean_per_query_seconds : s.mean_wall_seconds;
    }
    return -1.0;
}

double mirex_bench_mean_per_query(const mirex_bench* bench, const char* system, size_t query_count) {
    return bench_mean(bench, system, query_count, true);
}

double mirex_bench_mean_wall(const mirex_bench* bench, const char* system, size_t query_count) {
    return bench_mean(bench, system, query_count, false);
}

void mirex_bench_free(mirex_bench* bench) { delete bench; }

}  // extern "C"
