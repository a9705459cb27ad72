/*
 * Copyright 2026 The mirex Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * mirex: batch sequential-scan retrieval experiments.
 *
 * C interface to the mirex library. Every object is an opaque handle created
 * by a mirex_*_create/read/build function and released with the matching
 * mirex_*_free. Functions return a mirex_status; on failure a description is
 * available from mirex_last_error() on the calling thread until the next
 * call into the library from that thread.
 *
 * Strings returned as `const char*` are owned by the handle they came from
 * and stay valid until that handle is freed.
 */

#ifndef MIREX_MIREX_H
#define MIREX_MIREX_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(MIREX_BUILDING_LIBRARY)
#    define MIREX_API __declspec(dllexport)
#  else
#    define MIREX_API __declspec(dllimport)
#  endif
#else
#  define MIREX_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mirex_status {
    MIREX_OK = 0,
    MIREX_ERROR_INVALID_ARGUMENT = 1, /* null handle or pointer, bad enum */
    MIREX_ERROR_CONFIG = 2,           /* invalid parameter value */
    MIREX_ERROR_IO = 3,
    MIREX_ERROR_PARSE = 4,            /* malformed input line */
    MIREX_ERROR_INTEGRITY = 5,        /* duplicate ids and similar */
    MIREX_ERROR_FORMAT = 6,           /* stats/index file layout or version */
    MIREX_ERROR_JOB = 7,              /* a job function failed on a record */
    MIREX_ERROR_INTERNAL = 8
} mirex_status;

typedef struct mirex_corpus mirex_corpus;
typedef struct mirex_queries mirex_queries;
typedef struct mirex_stats mirex_stats;
typedef struct mirex_index mirex_index;
typedef struct mirex_results mirex_results;
typedef struct mirex_anchor_corpus mirex_anchor_corpus;
typedef struct mirex_evaluation mirex_evaluation;
typedef struct mirex_bench mirex_bench;

MIREX_API const char* mirex_version(void);
MIREX_API const char* mirex_last_error(void);
MIREX_API const char* mirex_status_name(mirex_status status);

/* ---- corpus ---------------------------------------------------------- */

typedef struct mirex_generator_options {
    double link_fraction; /* share of pages carrying anchors, default 0.5 */
    size_t min_length;    /* default 6 */
    size_t max_length;    /* default 300, at least 10 * min_length */
} mirex_generator_options;

MIREX_API void mirex_generator_options_init(mirex_generator_options* options);

/* Reads `doc_id\turl\ttext` lines (escaped; `.gz` is gunzipped). */
MIREX_API mirex_status mirex_corpus_read(const char* path, size_t shard_count, mirex_corpus** out);
MIREX_API mirex_status mirex_corpus_generate(size_t doc_count, size_t vocab_size, uint64_t seed,
                                             const mirex_generator_options* options, size_t shard_count,
                                             mirex_corpus** out);
MIREX_API mirex_status mirex_corpus_write(const mirex_corpus* corpus, const char* path);
MIREX_API size_t mirex_corpus_size(const mirex_corpus* corpus);
MIREX_API size_t mirex_corpus_shard_count(const mirex_corpus* corpus);
MIREX_API void mirex_corpus_free(mirex_corpus* corpus);

MIREX_API mirex_status mirex_queries_read(const char* path, mirex_queries** out);
MIREX_API mirex_status mirex_queries_generate(size_t query_count, size_t vocab_size, uint64_t seed,
                                              mirex_queries** out);
MIREX_API mirex_status mirex_queries_write(const mirex_queries* queries, const char* path);
MIREX_API size_t mirex_queries_size(const mirex_queries* queries);
MIREX_API const char* mirex_queries_id(const mirex_queries* queries, size_t i);
MIREX_API const char* mirex_queries_text(const mirex_queries* queries, size_t i);
MIREX_API void mirex_queries_free(mirex_queries* queries);

/* ---- statistics ------------------------------------------------------- */

MIREX_API mirex_status mirex_stats_compute(const mirex_corpus* corpus, size_t worker_count, int strip_html,
                                           mirex_stats** out);
MIREX_API mirex_status mirex_stats_load(const char* path, mirex_stats** out);
MIREX_API mirex_status mirex_stats_save(const mirex_stats* stats, const char* path);
MIREX_API uint64_t mirex_stats_total_tokens(const mirex_stats* stats);
MIREX_API uint64_t mirex_stats_doc_count(const mirex_stats* stats);
MIREX_API uint64_t mirex_stats_term_count(const mirex_stats* stats);
MIREX_API uint64_t mirex_stats_cf(const mirex_stats* stats, const char* term);
MIREX_API void mirex_stats_free(mirex_stats* stats);

/* ---- search ----------------------------------------------------------- */

typedef struct mirex_search_options {
    double lambda;            /* smoothing weight in (0, 1), default 0.85 */
    int length_prior;         /* default 1 */
    size_t top_k;             /* default 1000 */
    size_t worker_count;      /* default 1 */
    int use_combiner;         /* default 1 */
    int strip_html;           /* default 0 */
    size_t combine_threshold; /* default 4096 */
} mirex_search_options;

MIREX_API void mirex_search_options_init(mirex_search_options* options);

/* Sequential scan of the whole corpus for the whole query set. */
MIREX_API mirex_status mirex_search(const mirex_corpus* corpus, const mirex_queries* queries,
                                    const mirex_stats* stats, const mirex_search_options* options,
                                    mirex_results** out);

MIREX_API size_t mirex_results_query_count(const mirex_results* results);
MIREX_API const char* mirex_results_query_id(const mirex_results* results, size_t query);
MIREX_API size_t mirex_results_size(const mirex_results* results, size_t query);
MIREX_API const char* mirex_results_doc_id(const mirex_results* results, size_t query, size_t rank);
MIREX_API double mirex_results_score(const mirex_results* results, size_t query, size_t rank);

typedef struct mirex_shuffle_stats {
    uint64_t records_emitted_by_maps;
    uint64_t records_after_combine;
    uint64_t max_records_per_key;
    uint64_t keys;
    uint64_t documents_tokenized;
} mirex_shuffle_stats;

MIREX_API mirex_status mirex_results_shuffle(const mirex_results* results, mirex_shuffle_stats* out);

/* Records after combine for one query (0 when nothing was emitted for it). */
MIREX_API uint64_t mirex_results_shuffle_for(const mirex_results* results, const char* query_id);

/* Serializes the results as a TREC run file. */
MIREX_API mirex_status mirex_results_write_run(const mirex_results* results, const char* run_tag,
                                               const char* path);
MIREX_API void mirex_results_free(mirex_results* results);

/* ---- inverted-index baseline ----------------------------------------- */

MIREX_API mirex_status mirex_index_build(const mirex_corpus* corpus, int strip_html, mirex_index** out);
MIREX_API mirex_status mirex_index_load(const char* path, mirex_index** out);
MIREX_API mirex_status mirex_index_save(const mirex_index* index, const char* path);
MIREX_API size_t mirex_index_doc_count(const mirex_index* index);
MIREX_API size_t mirex_index_term_count(const mirex_index* index);
/* Runs every query against the index; options->worker_count is ignored. */
MIREX_API mirex_status mirex_index_search(const mirex_index* index, const mirex_queries* queries,
                                          const mirex_search_options* options, mirex_results** out);
MIREX_API void mirex_index_free(mirex_index* index);

/* ---- anchors ---------------------------------------------------------- */

MIREX_API mirex_status mirex_anchors_build(const mirex_corpus* corpus, size_t worker_count,
                                           size_t max_anchor_tokens, mirex_anchor_corpus** out);
MIREX_API double mirex_anchors_coverage(const mirex_anchor_corpus* anchors);
MIREX_API size_t mirex_anchors_size(const mirex_anchor_corpus* anchors);
MIREX_API mirex_status mirex_anchors_write(const mirex_anchor_corpus* anchors, const char* path);
MIREX_API void mirex_anchors_free(mirex_anchor_corpus* anchors);

/* ---- evaluation ------------------------------------------------------- */

MIREX_API mirex_status mirex_evaluate_files(const char* run_path, const char* qrels_path,
                                            mirex_evaluation** out);
MIREX_API double mirex_evaluation_mean_p5(const mirex_evaluation* e);
MIREX_API double mirex_evaluation_mean_p10(const mirex_evaluation* e);
MIREX_API double mirex_evaluation_mean_p20(const mirex_evaluation* e);
MIREX_API double mirex_evaluation_map(const mirex_evaluation* e);
MIREX_API size_t mirex_evaluation_query_count(const mirex_evaluation* e);
MIREX_API size_t mirex_evaluation_warning_count(const mirex_evaluation* e);
MIREX_API const char* mirex_evaluation_warning(const mirex_evaluation* e, size_t i);
/* Formatted table; per_query adds one row per judged query. */
MIREX_API const char* mirex_evaluation_table(mirex_evaluation* e, int per_query);
MIREX_API void mirex_evaluation_free(mirex_evaluation* e);

/* Judgments for synthetic queries: pages holding every query term are
 * relevant. Written in `query_id 0 doc_id grade` form. */
MIREX_API mirex_status mirex_qrels_generate(const mirex_corpus* corpus, const mirex_queries* queries,
                                            size_t max_relevant_per_query, const char* path);

/* ---- benchmark -------------------------------------------------------- */

typedef struct mirex_bench_config {
    const size_t* sizes; /* ascending */
    size_t size_count;
    size_t trials;       /* default 3 */
    uint64_t seed;       /* default 1 */
    int nested;          /* default 0 */
    size_t shard_count;  /* default 4 */
} mirex_bench_config;

MIREX_API void mirex_bench_config_init(mirex_bench_config* config);

MIREX_API mirex_status mirex_bench_run(const char* corpus_path, const mirex_queries* pool, const mirex_stats* stats,
                                       const mirex_bench_config* config, const mirex_search_options* options,
                                       mirex_bench** out);
MIREX_API const char* mirex_bench_csv(const mirex_bench* bench);
/* Mean seconds per query over trials for system "scan" or "baseline". */
MIREX_API double mirex_bench_mean_per_query(const mirex_bench* bench, const char* system, size_t query_count);
/* Mean wall seconds over trials; negative when no such cell exists. */
MIREX_API double mirex_bench_mean_wall(const mirex_bench* bench, const char* system, size_t query_count);
MIREX_API void mirex_bench_free(mirex_bench* bench);

#ifdef __cplusplus
}
#endif

#endif /* MIREX_MIREX_H */
