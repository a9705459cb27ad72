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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <stdexcept>

#include "engine.hpp"
#include "error.hpp"
#include "random.hpp"
#include "search.hpp"
#include "stats.hpp"
#include "support.hpp"
#include "text.hpp"

using namespace mirex;
using namespace mirex::engine;

namespace {

using CountJob = Job<std::string, std::uint64_t, std::pair<std::string, std::uint64_t>>;

std::vector<std::uint64_t> sum(const std::string&, std::vector<std::uint64_t> values) {
    std::uint64_t s = 0;
    for (auto v : values) s += v;
    return {s};
}

CountJob word_count() {
    CountJob job;
    job.map = [](const Document& d, CountJob::emitter_type& out) {
        text::for_each_token(d.text, [&](std::string_view t) { out.emit(std::string(t), 1); });
    };
    job.combine = sum;
    job.reduce = [](const std::string& k, std::vector<std::uint64_t> values, auto& out) {
        out.emplace_back(k, sum(k, std::move(values))[0]);
    };
    job.value_less = std::less<std::uint64_t>{};
    return job;
}

// Emits every value unchanged and reduces to the full sequence, exposing the
// order values reach the reducer.
using ListJob = Job<std::string, std::string, std::string>;

ListJob list_job() {
    ListJob job;
    job.map = [](const Document& d, ListJob::emitter_type& out) {
        text::for_each_token(d.text, [&](std::string_view t) { out.emit(std::string(t.substr(0, 1)), d.doc_id); });
    };
    job.reduce = [](const std::string& k, std::vector<std::string> values, std::vector<std::string>& out) {
        std::string line = k + ":";
        for (const auto& v : values) line += " " + v;
        out.push_back(line);
    };
    job.value_less = std::less<std::string>{};
    return job;
}

}  // namespace

TEST_CASE("word count") {
    Corpus c = shard_documents({{"x", "", "a b"}, {"y", "", "b"}}, 2);
    auto r = run_job(word_count(), c, RunOptions{1, true});
    using Out = std::vector<std::pair<std::string, std::uint64_t>>;
    CHECK(r.output == Out{{"a", 1}, {"b", 2}});
    CHECK(r.shuffle.records_emitted_by_maps == 3);
    CHECK(r.shuffle.records_after_combine == 2);
    CHECK(r.shuffle.per_key_after_combine.at("b") == 1);
    CHECK(run_job(word_count(), c, RunOptions{4, true}).output == r.output);
    CHECK(run_job(word_count(), c, RunOptions{4, false}).output == r.output);
}

TEST_CASE("property: determinism across workers, shards and thresholds") {
    auto docs = generate_synthetic(300, 200, 12);
    auto job = word_count();
    auto reference = run_job(job, shard_documents(docs, 1), RunOptions{1, false}).output;
    for (std::size_t shards : {1u, 3u, 16u}) {
        Corpus c = shard_documents(docs, shards);
        for (std::size_t workers : {1u, 2u, 4u, 8u}) {
            for (std::size_t threshold : {1u, 7u, 4096u}) {
                job.combine_threshold = threshold;
                auto r = run_job(job, c, RunOptions{workers, true});
                CHECK(r.output == reference);
                CHECK(r.shuffle.records_after_combine <= r.shuffle.records_emitted_by_maps);
            }
        }
    }
    // Value order reaching reduce is the job's order, independent of scheduling.
    auto lj = list_job();
    auto ordered = run_job(lj, shard_documents(docs, 1), RunOptions{1, true}).output;
    for (int rep = 0; rep < 5; ++rep) CHECK(run_job(lj, shard_documents(docs, 7), RunOptions{8, true}).output == ordered);
}

TEST_CASE("no key is lost or reduced twice") {
    auto docs = generate_synthetic(150, 80, 5);
    std::set<std::string> emitted;
    for (const auto& d : docs) {
        for (const auto& t : testing::oracle_tokenize(d.text)) emitted.insert(t);
    }
    auto r = run_job(word_count(), shard_documents(docs, 5), RunOptions{3, true});
    std::set<std::string> reduced;
    for (const auto& [k, n] : r.output) CHECK(reduced.insert(k).second);
    CHECK(reduced == emitted);
    std::uint64_t total = 0;
    for (const auto& [k, n] : r.output) total += n;
    CHECK(total == r.shuffle.records_emitted_by_maps);
}

TEST_CASE("verify_combiner") {
    auto docs = generate_synthetic(50, 60, 2);
    Corpus c = shard_documents(docs, 4);
    CHECK(verify_combiner(word_count(), c));

    auto bad = word_count();
    bad.combine = [](const std::string& k, std::vector<std::uint64_t> values) {
        values.pop_back();  // drops one value
        return sum(k, std::move(values));
    };
    CHECK_FALSE(verify_combiner(bad, c));

    auto none = word_count();
    none.combine = nullptr;
    CHECK_THROWS_AS(verify_combiner(none, c), Error);
}

TEST_CASE("top-K search job passes verify_combiner") {
    auto docs = generate_synthetic(50, 40, 6);
    Corpus c = shard_documents(docs, 3);
    auto queries = generate_queries(10, 40, 6);
    CollectionStats stats = compute_stats(c);
    SearchOptions o;
    o.top_k = 5;
    o.worker_count = 2;
    o.combine_threshold = 1;
    o.use_combiner = true;
    auto with = sequential_search(c, queries, stats, o);
    o.use_combiner = false;
    auto without = sequential_search(c, queries, stats, o);
    CHECK(with.results == without.results);
    CHECK(with.shuffle.records_after_combine < without.shuffle.records_after_combine);
}

TEST_CASE("map failure names the document and shard") {
    auto job = word_count();
    job.map = [](const Document& d, CountJob::emitter_type& out) {
        if (d.doc_id == "bad") throw std::runtime_error("boom");
        out.emit(d.doc_id, 1);
    };
    Corpus c = shard_documents({{"a", "", ""}, {"b", "", ""}, {"bad", "", ""}, {"c", "", ""}}, 2);
    for (std::size_t workers : {1u, 3u}) {
        try {
            run_job(job, c, RunOptions{workers, true});
            FAIL("no error");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::job);
            std::string what = e.what();
            CHECK(what.find("'bad'") != std::string::npos);
            CHECK(what.find("shard 0") != std::string::npos);
            CHECK(what.find("boom") != std::string::npos);
        }
    }
}

TEST_CASE("invalid run options") {
    Corpus c = shard_documents({{"a", "", "x"}}, 1);
    CHECK_THROWS_AS(run_job(word_count(), c, RunOptions{0, true}), Error);
    auto job = word_count();
    job.reduce = nullptr;
    CHECK_THROWS_AS(run_job(job, c, RunOptions{1, true}), Error);
}

TEST_CASE("empty corpus and empty shards") {
    auto r = run_job(word_count(), shard_documents({}, 4), RunOptions{4, true});
    CHECK(r.output.empty());
    CHECK(r.shuffle.records_emitted_by_maps == 0);
    auto r2 = run_job(word_count(), shard_documents({{"a", "", "x"}}, 16), RunOptions{8, true});
    CHECK(r2.output.size() == 1);
}
