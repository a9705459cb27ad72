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

// mirex command-line driver. Everything goes through the C interface.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "mirex/mirex.h"

namespace {

constexpr int kUsageError = 1;
constexpr int kDataError = 2;

// Thrown by command bodies; carries the exit code.
struct Failure {
    int code;
    std::string message;
};

void check(mirex_status status, const std::string& what) {
    if (status == MIREX_OK) return;
    int code = (status == MIREX_ERROR_CONFIG || status == MIREX_ERROR_INVALID_ARGUMENT) ? kUsageError : kDataError;
    throw Failure{code, what + ": " + mirex_status_name(status) + ": " + mirex_last_error()};
}

template <class T, void (*Free)(T*)>
struct Deleter {
    void operator()(T* p) const { Free(p); }
};

using CorpusPtr = std::unique_ptr<mirex_corpus, Deleter<mirex_corpus, mirex_corpus_free>>;
using QueriesPtr = std::unique_ptr<mirex_queries, Deleter<mirex_queries, mirex_queries_free>>;
using StatsPtr = std::unique_ptr<mirex_stats, Deleter<mirex_stats, mirex_stats_free>>;
using IndexPtr = std::unique_ptr<mirex_index, Deleter<mirex_index, mirex_index_free>>;
using ResultsPtr = std::unique_ptr<mirex_results, Deleter<mirex_results, mirex_results_free>>;
using AnchorsPtr = std::unique_ptr<mirex_anchor_corpus, Deleter<mirex_anchor_corpus, mirex_anchors_free>>;
using EvaluationPtr = std::unique_ptr<mirex_evaluation, Deleter<mirex_evaluation, mirex_evaluation_free>>;
using BenchPtr = std::unique_ptr<mirex_bench, Deleter<mirex_bench, mirex_bench_free>>;

CorpusPtr read_corpus(const std::string& path, std::size_t shards) {
    mirex_corpus* c = nullptr;
    check(mirex_corpus_read(path.c_str(), shards, &c), "reading corpus " + path);
    return CorpusPtr(c);
}

QueriesPtr read_queries(const std::string& path) {
    mirex_queries* q = nullptr;
    check(mirex_queries_read(path.c_str(), &q), "reading queries " + path);
    return QueriesPtr(q);
}

StatsPtr load_stats(const std::string& path) {
    mirex_stats* s = nullptr;
    check(mirex_stats_load(path.c_str(), &s), "reading stats " + path);
    return StatsPtr(s);
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

class Clock {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Ordered key=value lines; written beside every output.
class Metadata {
public:
    void set(const std::string& key, const std::string& value) {
        for (auto& [k, v] : entries_) {
            if (k == key) {
                v = value;
                return;
            }
        }
        entries_.emplace_back(key, value);
    }
    void set(const std::string& key, double value) { set(key, format_double(value)); }
    void set(const std::string& key, std::uint64_t value) { set(key, std::to_string(value)); }
    void set(const std::string& key, bool value) { set(key, std::string(value ? "true" : "false")); }
    void set(const std::string& key, const char* value) { set(key, std::string(value)); }

    void write(const std::string& path) const {
        std::ofstream out(path, std::ios::binary);
        for (const auto& [k, v] : entries_) out << k << '=' << v << '\n';
        out.flush();
        if (!out) throw Failure{kDataError, "cannot write metadata " + path};
    }

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

std::map<std::string, std::string> read_metadata(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Failure{kDataError, "cannot read metadata " + path};
    std::map<std::string, std::string> values;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Failure{kDataError, path + ":" + std::to_string(number) + ": expected key=value"};
        values[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return values;
}

std::size_t default_workers() {
    if (const char* env = std::getenv("MIREX_WORKERS"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (*end != '\0' || v == 0) throw Failure{kUsageError, "MIREX_WORKERS must be a positive integer"};
        return static_cast<std::size_t>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Worker and shard counts shared by every job-running subcommand.
struct Parallelism {
    std::size_t workers = 0;  // 0: MIREX_WORKERS, then hardware
    std::size_t shards = 0;   // 0: 4 x workers

    void add_to(CLI::App* app) {
        app->add_option("--workers", workers, "Worker threads (default: $MIREX_WORKERS or hardware threads)");
        app->add_option("--shards", shards, "Corpus shards (default: 4 x workers)");
    }

    void resolve() {
        if (workers == 0) workers = default_workers();
        if (shards == 0) shards = 4 * workers;
    }

    void record(Metadata& m) const {
        m.set("workers", static_cast<std::uint64_t>(workers));
        m.set("shards", static_cast<std::uint64_t>(shards));
    }
};

std::string metadata_path(const std::string& explicit_path, const std::string& out) {
    return explicit_path.empty() ? out + ".meta" : explicit_path;
}

// ---- generate ----

struct GenerateArgs {
    std::size_t docs = 1000;
    std::size_t vocab = 5000;
    std::uint64_t seed = 1;
    double link_fraction = 0.5;
    std::size_t min_length = 0;
    std::size_t max_length = 0;
    std::string out;
    std::string queries_out;
    std::size_t query_count = 50;
    std::string qrels_out;
    std::size_t max_relevant = 100;
    std::string metadata;
};

int run_generate(const GenerateArgs& a) {
    Clock clock;
    mirex_generator_options options;
    mirex_generator_options_init(&options);
    options.link_fraction = a.link_fraction;
    if (a.min_length != 0) options.min_length = a.min_length;
    if (a.max_length != 0) options.max_length = a.max_length;

    mirex_corpus* raw = nullptr;
    check(mirex_corpus_generate(a.docs, a.vocab, a.seed, &options, 1, &raw), "generating corpus");
    CorpusPtr corpus(raw);
    check(mirex_corpus_write(corpus.get(), a.out.c_str()), "writing corpus " + a.out);

    QueriesPtr queries;
    if (!a.queries_out.empty() || !a.qrels_out.empty()) {
        mirex_queries* q = nullptr;
        check(mirex_queries_generate(a.query_count, a.vocab, a.seed, &q), "generating queries");
        queries.reset(q);
    }
    if (!a.queries_out.empty())
        check(mirex_queries_write(queries.get(), a.queries_out.c_str()), "writing queries " + a.queries_out);
    if (!a.qrels_out.empty())
        check(mirex_qrels_generate(corpus.get(), queries.get(), a.max_relevant, a.qrels_out.c_str()),
              "writing qrels " + a.qrels_out);

    Metadata m;
    m.set("command", "generate");
    m.set("docs", static_cast<std::uint64_t>(a.docs));
    m.set("vocab", static_cast<std::uint64_t>(a.vocab));
    m.set("seed", a.seed);
    m.set("link_fraction", a.link_fraction);
    m.set("min_length", static_cast<std::uint64_t>(options.min_length));
    m.set("max_length", static_cast<std::uint64_t>(options.max_length));
    m.set("out", a.out);
    if (!a.queries_out.empty() || !a.qrels_out.empty()) {
        m.set("query_count", static_cast<std::uint64_t>(a.query_count));
        m.set("queries_out", a.queries_out);
        m.set("qrels_out", a.qrels_out);
        m.set("max_relevant", static_cast<std::uint64_t>(a.max_relevant));
    }
    m.set("time.total_seconds", clock.seconds());
    m.write(metadata_path(a.metadata, a.out));
    return 0;
}

// ---- stats ----

struct StatsArgs {
    std::string corpus;
    std::string out;
    bool strip_html = false;
    Parallelism par;
    std::string metadata;
};

int run_stats(StatsArgs a) {
    a.par.resolve();
    Clock clock;
    auto corpus = read_corpus(a.corpus, a.par.shards);
    double read_seconds = clock.seconds();
    mirex_stats* raw = nullptr;
    check(mirex_stats_compute(corpus.get(), a.par.workers, a.strip_html ? 1 : 0, &raw), "computing stats");
    StatsPtr stats(raw);
    check(mirex_stats_save(stats.get(), a.out.c_str()), "writing stats " + a.out);

    Metadata m;
    m.set("command", "stats");
    m.set("corpus", a.corpus);
    m.set("out", a.out);
    m.set("strip_html", a.strip_html);
    a.par.record(m);
    m.set("stats.total_tokens", mirex_stats_total_tokens(stats.get()));
    m.set("stats.doc_count", mirex_stats_doc_count(stats.get()));
    m.set("stats.term_count", mirex_stats_term_count(stats.get()));
    m.set("time.read_seconds", read_seconds);
    m.set("time.total_seconds", clock.seconds());
    m.write(metadata_path(a.metadata, a.out));
    return 0;
}

// ---- anchors ----

struct AnchorsArgs {
    std::string corpus;
    std::string out;
    std::size_t max_anchor_tokens = 512;
    Parallelism par;
    std::string metadata;
};

int run_anchors(AnchorsArgs a) {
    a.par.resolve();
    Clock clock;
    auto corpus = read_corpus(a.corpus, a.par.shards);
    mirex_anchor_corpus* raw = nullptr;
    check(mirex_anchors_build(corpus.get(), a.par.workers, a.max_anchor_tokens, &raw), "extracting anchors");
    AnchorsPtr anchors(raw);
    check(mirex_anchors_write(anchors.get(), a.out.c_str()), "writing anchor corpus " + a.out);
    double coverage = mirex_anchors_coverage(anchors.get());
    std::printf("anchor documents: %zu of %zu (coverage %.4f)\n", mirex_anchors_size(anchors.get()),
                mirex_corpus_size(corpus.get()), coverage);

    Metadata m;
    m.set("command", "anchors");
    m.set("corpus", a.corpus);
    m.set("out", a.out);
    m.set("max_anchor_tokens", static_cast<std::uint64_t>(a.max_anchor_tokens));
    a.par.record(m);
    m.set("anchors.documents", static_cast<std::uint64_t>(mirex_anchors_size(anchors.get())));
    m.set("anchors.coverage", coverage);
    m.set("time.total_seconds", clock.seconds());
    m.write(metadata_path(a.metadata, a.out));
    return 0;
}

// ---- search / isearch ----

struct SearchArgs {
    std::string corpus;
    std::string index;
    std::string queries;
    std::string stats;
    std::size_t topk = 1000;
    std::string run_tag = "mirex";
    std::string out;
    double lambda = 0.85;
    bool no_length_prior = false;
    bool strip_html = false;
    bool no_combine = false;
    std::size_t combine_threshold = 4096;
    Parallelism par;
    std::string metadata;
    std::string replay;
};

mirex_search_options search_options(const SearchArgs& a) {
    mirex_search_options o;
    mirex_search_options_init(&o);
    o.lambda = a.lambda;
    o.length_prior = a.no_length_prior ? 0 : 1;
    o.top_k = a.topk;
    o.worker_count = a.par.workers;
    o.use_combiner = a.no_combine ? 0 : 1;
    o.strip_html = a.strip_html ? 1 : 0;
    o.combine_threshold = a.combine_threshold;
    return o;
}

template <class T>
T parse_value(const std::map<std::string, std::string>& values, const std::string& key, T fallback) {
    auto it = values.find(key);
    if (it == values.end()) return fallback;
    std::istringstream in(it->second);
    T v{};
    if constexpr (std::is_same_v<T, bool>) {
        if (it->second == "true") return true;
        if (it->second == "false") return false;
        throw Failure{kDataError, "metadata key " + key + " is not a boolean"};
    } else {
        in >> v;
        if (!in || !in.eof()) throw Failure{kDataError, "metadata key " + key + " has a bad value"};
    }
    return v;
}

// Fills args from a metadata file written by an earlier search.
void apply_replay(SearchArgs& a, bool out_given) {
    auto v = read_metadata(a.replay);
    auto cmd = v.find("command");
    if (cmd == v.end() || (cmd->second != "search" && cmd->second != "isearch"))
        throw Failure{kDataError, a.replay + " is not search metadata"};
    auto text = [&](const std::string& key) {
        auto it = v.find(key);
        return it == v.end() ? std::string() : it->second;
    };
    a.corpus = text("corpus");
    a.index = text("index");
    a.queries = text("queries");
    a.stats = text("stats");
    a.run_tag = text("run_tag");
    if (!out_given) a.out = text("out");
    a.topk = parse_value<std::size_t>(v, "topk", a.topk);
    a.lambda = parse_value<double>(v, "lambda", a.lambda);
    a.no_length_prior = !parse_value<bool>(v, "length_prior", true);
    a.strip_html = parse_value<bool>(v, "strip_html", a.strip_html);
    a.no_combine = !parse_value<bool>(v, "combine", true);
    a.combine_threshold = parse_value<std::size_t>(v, "combine_threshold", a.combine_threshold);
    a.par.workers = parse_value<std::size_t>(v, "workers", a.par.workers);
    a.par.shards = parse_value<std::size_t>(v, "shards", a.par.shards);
}

void record_search_config(Metadata& m, const SearchArgs& a, const char* command) {
    m.set("command", command);
    if (!a.corpus.empty()) m.set("corpus", a.corpus);
    if (!a.index.empty()) m.set("index", a.index);
    m.set("queries", a.queries);
    if (!a.stats.empty()) m.set("stats", a.stats);
    m.set("out", a.out);
    m.set("run_tag", a.run_tag);
    m.set("topk", static_cast<std::uint64_t>(a.topk));
    m.set("lambda", a.lambda);
    m.set("length_prior", !a.no_length_prior);
    m.set("strip_html", a.strip_html);
}

int run_search(SearchArgs a, bool out_given) {
    if (!a.replay.empty()) apply_replay(a, out_given);
    if (a.corpus.empty() || a.queries.empty() || a.stats.empty() || a.out.empty())
        throw Failure{kUsageError, "search needs --corpus, --queries, --stats and --out (or --replay)"};
    a.par.resolve();
    Clock clock;
    auto queries = read_queries(a.queries);
    auto stats = load_stats(a.stats);
    double setup_seconds = clock.seconds();
    auto corpus = read_corpus(a.corpus, a.par.shards);
    double read_seconds = clock.seconds() - setup_seconds;

    auto options = search_options(a);
    mirex_results* raw = nullptr;
    check(mirex_search(corpus.get(), queries.get(), stats.get(), &options, &raw), "searching");
    ResultsPtr results(raw);
    double search_seconds = clock.seconds() - setup_seconds - read_seconds;
    check(mirex_results_write_run(results.get(), a.run_tag.c_str(), a.out.c_str()), "writing run " + a.out);

    mirex_shuffle_stats shuffle;
    check(mirex_results_shuffle(results.get(), &shuffle), "reading shuffle counters");

    Metadata m;
    record_search_config(m, a, "search");
    m.set("combine", !a.no_combine);
    m.set("combine_threshold", static_cast<std::uint64_t>(a.combine_threshold));
    a.par.record(m);
    m.set("shuffle.records_emitted_by_maps", shuffle.records_emitted_by_maps);
    m.set("shuffle.records_after_combine", shuffle.records_after_combine);
    m.set("shuffle.max_records_per_key", shuffle.max_records_per_key);
    m.set("shuffle.keys", shuffle.keys);
    m.set("shuffle.documents_tokenized", shuffle.documents_tokenized);
    m.set("time.read_seconds", read_seconds);
    m.set("time.search_seconds", search_seconds);
    m.set("time.total_seconds", clock.seconds());
    m.write(metadata_path(a.metadata, a.out));
    return 0;
}

int run_isearch(SearchArgs a, bool out_given) {
    if (!a.replay.empty()) apply_replay(a, out_given);
    if ((a.index.empty() == a.corpus.empty()) || a.queries.empty() || a.out.empty())
        throw Failure{kUsageError, "isearch needs exactly one of --index or --corpus, plus --queries and --out"};
    Clock clock;
    auto queries = read_queries(a.queries);
    mirex_index* raw_index = nullptr;
    if (!a.index.empty()) {
        check(mirex_index_load(a.index.c_str(), &raw_index), "reading index " + a.index);
    } else {
        auto corpus = read_corpus(a.corpus, 1);
        check(mirex_index_build(corpus.get(), a.strip_html ? 1 : 0, &raw_index), "building index");
    }
    IndexPtr index(raw_index);
    double build_seconds = clock.seconds();

    auto options = search_options(a);
    mirex_results* raw = nullptr;
    check(mirex_index_search(index.get(), queries.get(), &options, &raw), "searching index");
    ResultsPtr results(raw);
    double search_seconds = clock.seconds() - build_seconds;
    check(mirex_results_write_run(results.get(), a.run_tag.c_str(), a.out.c_str()), "writing run " + a.out);

    Metadata m;
    record_search_config(m, a, "isearch");
    m.set("time.load_seconds", build_seconds);
    m.set("time.search_seconds", search_seconds);
    m.set("time.total_seconds", clock.seconds());
    m.write(metadata_path(a.metadata, a.out));
    return 0;
}

// ---- index ----

struct IndexArgs {
    std::string corpus;
    std::string out;
    bool strip_html = false;
    std::string metadata;
};

int run_index(const IndexArgs& a) {
    Clock clock;
    auto corpus = read_corpus(a.corpus, 1);
    mirex_index* raw = nullptr;
    check(mirex_index_build(corpus.get(), a.strip_html ? 1 : 0, &raw), "building index");
    IndexPtr index(raw);
    check(mirex_index_save(index.get(), a.out.c_str()), "writing index " + a.out);

    Metadata m;
    m.set("command", "index");
    m.set("corpus", a.corpus);
    m.set("out", a.out);
    m.set("strip_html", a.strip_html);
    m.set("index.documents", static_cast<std::uint64_t>(mirex_index_doc_count(index.get())));
    m.set("index.terms", static_cast<std::uint64_t>(mirex_index_term_count(index.get())));
    m.set("time.total_seconds", clock.seconds());
    m.write(metadata_path(a.metadata, a.out));
    return 0;
}

// ---- eval ----

struct EvalArgs {
    std::string run;
    std::string qrels;
    bool per_query = false;
};

int run_eval(const EvalArgs& a) {
    mirex_evaluation* raw = nullptr;
    check(mirex_evaluate_files(a.run.c_str(), a.qrels.c_str(), &raw), "evaluating " + a.run);
    EvaluationPtr e(raw);
    for (std::size_t i = 0; i < mirex_evaluation_warning_count(e.get()); ++i)
        std::fprintf(stderr, "warning: %s\n", mirex_evaluation_warning(e.get(), i));
    std::fputs(mirex_evaluation_table(e.get(), a.per_query ? 1 : 0), stdout);
    return 0;
}

// ---- bench ----

struct BenchArgs {
    std::string corpus;
    std::string queries;
    std::string stats;
    std::vector<std::size_t> sizes{10, 100, 1000};
    std::size_t trials = 3;
    std::uint64_t seed = 1;
    bool nested = false;
    std::size_t topk = 1000;
    double lambda = 0.85;
    bool no_length_prior = false;
    std::string out;
    Parallelism par;
};

int run_bench(BenchArgs a) {
    a.par.resolve();
    auto pool = read_queries(a.queries);
    auto stats = load_stats(a.stats);

    mirex_bench_config config;
    mirex_bench_config_init(&config);
    config.sizes = a.sizes.data();
    config.size_count = a.sizes.size();
    config.trials = a.trials;
    config.seed = a.seed;
    config.nested = a.nested ? 1 : 0;
    config.shard_count = a.par.shards;

    mirex_search_options options;
    mirex_search_options_init(&options);
    options.top_k = a.topk;
    options.lambda = a.lambda;
    options.length_prior = a.no_length_prior ? 0 : 1;
    options.worker_count = a.par.workers;

    mirex_bench* raw = nullptr;
    check(mirex_bench_run(a.corpus.c_str(), pool.get(), stats.get(), &config, &options, &raw), "benchmarking");
    BenchPtr bench(raw);

    const char* csv = mirex_bench_csv(bench.get());
    if (a.out.empty()) {
        std::fputs(csv, stdout);
    } else {
        std::ofstream out(a.out, std::ios::binary);
        out << csv;
        out.flush();
        if (!out) throw Failure{kDataError, "cannot write " + a.out};
    }
    for (std::size_t size : a.sizes) {
        double scan = mirex_bench_mean_wall(bench.get(), "scan", size);
        double base = mirex_bench_mean_wall(bench.get(), "baseline", size);
        std::fprintf(stderr, "%zu queries: scan %.6f s/query, baseline %.6f s/query, scan/baseline %.2f\n", size,
                     scan / static_cast<double>(size), base / static_cast<double>(size), scan / base);
    }
    if (a.sizes.size() >= 2) {
        double small = mirex_bench_mean_per_query(bench.get(), "scan", a.sizes.front());
        double large = mirex_bench_mean_per_query(bench.get(), "scan", a.sizes.back());
        std::fprintf(stderr, "scan per-query time at %zu / at %zu queries: %.4f\n", a.sizes.back(), a.sizes.front(),
                     large / small);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mirex: batch sequential-scan retrieval experiments"};
    app.require_subcommand(1);
    app.set_version_flag("--version", mirex_version());

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "Write a synthetic corpus (and optionally queries, qrels)");
    generate->add_option("--docs", gen.docs, "Number of documents")->check(CLI::PositiveNumber);
    generate->add_option("--vocab", gen.vocab, "Vocabulary size")->check(CLI::Range(2, 1 << 30));
    generate->add_option("--seed", gen.seed, "Random seed");
    generate->add_option("--link-fraction", gen.link_fraction, "Share of pages with anchors")
        ->check(CLI::Range(0.0, 1.0));
    generate->add_option("--min-length", gen.min_length, "Shortest document in tokens");
    generate->add_option("--max-length", gen.max_length, "Longest document in tokens");
    generate->add_option("--out", gen.out, "Corpus path (.gz to compress)")->required();
    generate->add_option("--queries-out", gen.queries_out, "Also write a query set");
    generate->add_option("--query-count", gen.query_count, "Queries to generate")->check(CLI::PositiveNumber);
    generate->add_option("--qrels-out", gen.qrels_out, "Also write judgments for the query set");
    generate->add_option("--max-relevant", gen.max_relevant, "Cap on judged documents per query");
    generate->add_option("--metadata", gen.metadata, "Metadata path (default: <out>.meta)");

    StatsArgs st;
    auto* stats = app.add_subcommand("stats", "Compute collection statistics");
    stats->add_option("--corpus", st.corpus, "Corpus path")->required();
    stats->add_option("--out", st.out, "Stats path")->required();
    stats->add_flag("--strip-html", st.strip_html, "Remove markup before tokenizing");
    st.par.add_to(stats);
    stats->add_option("--metadata", st.metadata, "Metadata path (default: <out>.meta)");

    AnchorsArgs an;
    auto* anchors = app.add_subcommand("anchors", "Build the anchor-text corpus");
    anchors->add_option("--corpus", an.corpus, "Corpus path")->required();
    anchors->add_option("--out", an.out, "Anchor corpus path")->required();
    anchors->add_option("--max-anchor-tokens", an.max_anchor_tokens, "Token cap per anchor")
        ->check(CLI::PositiveNumber);
    an.par.add_to(anchors);
    anchors->add_option("--metadata", an.metadata, "Metadata path (default: <out>.meta)");

    auto add_scoring = [](CLI::App* cmd, SearchArgs& s) {
        cmd->add_option("--queries", s.queries, "Query file");
        cmd->add_option("--topk", s.topk, "Results per query")->check(CLI::PositiveNumber);
        cmd->add_option("--run-tag", s.run_tag, "Run tag");
        cmd->add_option("--out", s.out, "Run file path");
        cmd->add_option("--lambda", s.lambda, "Smoothing weight in (0, 1)");
        cmd->add_flag("--no-length-prior", s.no_length_prior, "Disable the length prior");
        cmd->add_flag("--strip-html", s.strip_html, "Remove markup before tokenizing");
        cmd->add_option("--metadata", s.metadata, "Metadata path (default: <out>.meta)");
        cmd->add_option("--replay", s.replay, "Rerun with the configuration in a metadata file");
    };

    SearchArgs se;
    auto* search = app.add_subcommand("search", "Sequential scan for a query set");
    search->add_option("--corpus", se.corpus, "Corpus path");
    search->add_option("--stats", se.stats, "Stats path");
    add_scoring(search, se);
    search->add_flag("--no-combine", se.no_combine, "Disable the combiner");
    search->add_option("--combine-threshold", se.combine_threshold, "Buffered values per key before combining")
        ->check(CLI::PositiveNumber);
    se.par.add_to(search);

    IndexArgs ix;
    auto* index = app.add_subcommand("index", "Build and save an inverted index");
    index->add_option("--corpus", ix.corpus, "Corpus path")->required();
    index->add_option("--out", ix.out, "Index path")->required();
    index->add_flag("--strip-html", ix.strip_html, "Remove markup before tokenizing");
    index->add_option("--metadata", ix.metadata, "Metadata path (default: <out>.meta)");

    SearchArgs is;
    auto* isearch = app.add_subcommand("isearch", "Query an inverted index");
    isearch->add_option("--index", is.index, "Saved index");
    isearch->add_option("--corpus", is.corpus, "Corpus to index in memory");
    add_scoring(isearch, is);

    EvalArgs ev;
    auto* eval = app.add_subcommand("eval", "Score a run against judgments");
    eval->add_option("--run", ev.run, "Run file")->required();
    eval->add_option("--qrels", ev.qrels, "Qrels file")->required();
    eval->add_flag("--per-query", ev.per_query, "Also print one row per query");

    BenchArgs be;
    auto* bench = app.add_subcommand("bench", "Time scan and index search across query-set sizes");
    bench->add_option("--corpus", be.corpus, "Corpus path")->required();
    bench->add_option("--queries", be.queries, "Query pool")->required();
    bench->add_option("--stats", be.stats, "Stats path")->required();
    bench->add_option("--sizes", be.sizes, "Query-set sizes, ascending")->delimiter(',');
    bench->add_option("--trials", be.trials, "Trials per size")->check(CLI::PositiveNumber);
    bench->add_option("--seed", be.seed, "Sampling seed");
    bench->add_flag("--nested", be.nested, "Smaller query sets are prefixes of larger ones");
    bench->add_option("--topk", be.topk, "Results per query")->check(CLI::PositiveNumber);
    bench->add_option("--lambda", be.lambda, "Smoothing weight in (0, 1)");
    bench->add_flag("--no-length-prior", be.no_length_prior, "Disable the length prior");
    bench->add_option("--out", be.out, "CSV path (default: stdout)");
    be.par.add_to(bench);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kUsageError;
    }

    try {
        if (*generate) return run_generate(gen);
        if (*stats) return run_stats(st);
        if (*anchors) return run_anchors(an);
        if (*search) return run_search(se, search->count("--out") > 0);
        if (*index) return run_index(ix);
        if (*isearch) return run_isearch(is, isearch->count("--out") > 0);
        if (*eval) return run_eval(ev);
        if (*bench) return run_bench(be);
    } catch (const Failure& f) {
        std::fprintf(stderr, "mirex: %s\n", f.message.c_str());
        return f.code;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "mirex: %s\n", e.what());
        return kDataError;
    }
    return kUsageError;
}
