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

#include "baseline.hpp"
#include "error.hpp"
#include "random.hpp"
#include "search.hpp"
#include "stats.hpp"
#include "support.hpp"

using namespace mirex;
using testing::TempDir;

namespace {

using Postings = std::vector<Posting>;

std::vector<Posting> postings_of(const InvertedIndex& index, std::string_view term) {
    auto span = index.postings(term);
    return {span.begin(), span.end()};
}

}  // namespace

TEST_CASE("two-document index") {
    // Docs are listed out of id order to check ordinal assignment.
    InvertedIndex index = InvertedIndex::build(shard_documents({{"d2", "", "b"}, {"d1", "", "a a b"}}, 2));
    REQUIRE(index.document_count() == 2);
    CHECK(index.doc_id(0) == "d1");
    CHECK(index.doc_id(1) == "d2");
    CHECK(index.doc_length(0) == 3);
    CHECK(postings_of(index, "a") == Postings{{0, 2}});
    CHECK(postings_of(index, "b") == Postings{{0, 1}, {1, 1}});
    CHECK(index.postings("z").empty());
    CHECK(index.term_count() == 2);
}

TEST_CASE("empty index") {
    InvertedIndex index = InvertedIndex::build(shard_documents({}, 1));
    CHECK(index.document_count() == 0);
    CHECK(index.term_count() == 0);
    CHECK(index.stats() == CollectionStats{});
    std::vector<Query> qs = {{"q", "a"}};
    CHECK(index_search(index, qs[0], {}, 10).empty());
}

TEST_CASE("duplicate doc_id is an integrity error") {
    Corpus c = shard_documents({{"d1", "", "a"}, {"d1", "", "b"}}, 1);
    try {
        InvertedIndex::build(c);
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::integrity);
    }
}

TEST_CASE("embedded stats equal compute_stats; postings sum to cf") {
    auto docs = generate_synthetic(600, 250, 13);
    for (bool strip : {false, true}) {
        Corpus c = shard_documents(docs, 5);
        InvertedIndex index = InvertedIndex::build(c, strip);
        StatsOptions o;
        o.strip_html = strip;
        o.worker_count = 3;
        CollectionStats stats = compute_stats(c, o);
        CHECK(index.stats() == stats);
        for (const auto& [term, cf] : stats.cf) {
            std::uint64_t sum = 0;
            std::uint32_t last = 0;
            bool first = true;
            for (const auto& p : index.postings(term)) {
                CHECK((first || p.doc > last));
                first = false;
                last = p.doc;
                sum += p.tf;
            }
            CHECK(sum == cf);
        }
    }
}

TEST_CASE("index_search equals the scan, exactly") {
    Rng rng(555);
    for (int trial = 0; trial < 10; ++trial) {
        auto docs = generate_synthetic(50 + rng.below(400), 30 + rng.below(300), rng.next());
        auto queries = generate_queries(15, 200, rng.next());
        Corpus c = shard_documents(docs, 3);
        SearchOptions o;
        o.top_k = 1 + rng.below(40);
        o.scoring.lambda = 0.1 + 0.8 * rng.uniform();
        o.scoring.length_prior = rng.chance(0.7);
        o.strip_html = rng.chance(0.3);
        StatsOptions so;
        so.strip_html = o.strip_html;
        auto scan = sequential_search(c, queries, compute_stats(c, so), o).results;
        InvertedIndex index = InvertedIndex::build(c, o.strip_html);
        auto all = index_search_all(index, queries, o.scoring, o.top_k);
        CHECK(all == scan);
        for (const auto& q : queries) {
            // Scores are bit-identical, not merely close.
            auto one = index_search(index, q, o.scoring, o.top_k);
            const auto& s = scan.at(q.query_id).entries();
            REQUIRE(one.size() == s.size());
            for (std::size_t i = 0; i < s.size(); ++i) {
                CHECK(one.entries()[i].doc_id == s[i].doc_id);
                CHECK(one.entries()[i].score == s[i].score);
            }
        }
    }
}

TEST_CASE("absent terms and large K") {
    std::vector<Document> docs = {{"d1", "", "a b"}, {"d2", "", "b c"}, {"d3", "", "c"}};
    InvertedIndex index = InvertedIndex::build(shard_documents(docs, 1));
    CHECK(index_search(index, Query{"q", "zzz"}, {}, 10).empty());
    CHECK(index_search(index, Query{"q", "b"}, {}, 1000).size() == 2);
    CHECK(index_search(index, Query{"q", "b"}, {}, 1).size() == 1);
    CHECK_THROWS_AS(index_search(index, Query{"q", "..."}, {}, 10), Error);
}

TEST_CASE("index save and load") {
    TempDir dir;
    auto docs = generate_synthetic(300, 200, 3);
    docs.push_back({"odd\\id", "", "tab\tinside  und  ümlaut"});
    InvertedIndex index = InvertedIndex::build(shard_documents(docs, 2));
    for (const char* name : {"i.tsv", "i.tsv.gz"}) {
        index.save(dir.file(name));
        InvertedIndex back = InvertedIndex::load(dir.file(name));
        CHECK(back == index);
        CHECK(back.stats() == index.stats());
    }
    InvertedIndex empty = InvertedIndex::build(shard_documents({}, 1));
    empty.save(dir.file("e.tsv"));
    CHECK(InvertedIndex::load(dir.file("e.tsv")) == empty);
}

TEST_CASE("index load rejects malformed files") {
    TempDir dir;
    InvertedIndex index = InvertedIndex::build(shard_documents({{"d1", "", "a a b"}, {"d2", "", "b"}}, 1));
    index.save(dir.file("i.tsv"));
    std::string good = testing::read_file(dir.file("i.tsv"));
    auto rejects = [&](const std::string& content) {
        testing::write_file(dir.file("bad.tsv"), content);
        try {
            InvertedIndex::load(dir.file("bad.tsv"));
        } catch (const Error& e) {
            return e.kind() == ErrorKind::format;
        }
        return false;
    };
    CHECK(rejects(""));
    CHECK(rejects("mirex-index\t9\t0\t0\n"));
    CHECK(rejects(good.substr(0, good.rfind('\n', good.size() - 2) + 1)));
    std::string wrong_tf = good;
    wrong_tf.replace(wrong_tf.find("0:2"), 3, "0:3");
    CHECK(rejects(wrong_tf));
    std::string out_of_range = good;
    out_of_range.replace(out_of_range.find("0:2"), 3, "7:2");
    CHECK(rejects(out_of_range));
    CHECK(rejects(good + "post\tzz\t0:1\n"));
}
