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

#include "error.hpp"
#include "random.hpp"
#include "stats.hpp"
#include "support.hpp"
#include "text.hpp"

using namespace mirex;
using testing::TempDir;

using Tokens = std::vector<std::string>;

TEST_CASE("tokenize hand cases") {
    CHECK(text::tokenize("Hello, World!") == Tokens{"hello", "world"});
    CHECK(text::tokenize("").empty());
    CHECK(text::tokenize("état-3 ÉTAT") == Tokens{"état", "3", "état"});
    CHECK(text::tokenize("  --  ").empty());
    CHECK(text::tokenize("ab12cd") == Tokens{"ab12cd"});
    CHECK(text::tokenize("Straße ΑΒΓ москва") == Tokens{"straße", "αβγ", "москва"});
    CHECK(text::tokenize("日本語 text") == Tokens{"日本語", "text"});
    CHECK(text::tokenize("a_b") == Tokens{"a", "b"});
    // Invalid UTF-8 separates tokens instead of being glued into them.
    CHECK(text::tokenize("ab\xff" "cd") == Tokens{"ab", "cd"});
    CHECK(text::tokenize("x\xc3") == Tokens{"x"});
}

TEST_CASE("property: tokenize agrees with the ASCII oracle") {
    Rng rng(17);
    const std::string alphabet = "aZ09 ,.-_\t\n<>/'\"";
    for (int i = 0; i < 3000; ++i) {
        std::string s;
        std::size_t n = rng.below(30);
        for (std::size_t j = 0; j < n; ++j) s += alphabet[rng.below(alphabet.size())];
        CHECK(text::tokenize(s) == testing::oracle_tokenize(s));
    }
}

TEST_CASE("property: tokenize distributes over space-joined concatenation") {
    Rng rng(3);
    const std::vector<std::string> pieces = {"ab", "É", "x1", ",", "ß", "中", "!", "Zz"};
    auto random_text = [&] {
        std::string s;
        std::size_t n = rng.below(8);
        for (std::size_t j = 0; j < n; ++j) s += pieces[rng.below(pieces.size())];
        return s;
    };
    for (int i = 0; i < 2000; ++i) {
        std::string a = random_text();
        std::string b = random_text();
        Tokens joined = text::tokenize(a);
        Tokens tb = text::tokenize(b);
        joined.insert(joined.end(), tb.begin(), tb.end());
        CHECK(text::tokenize(a + " " + b) == joined);
    }
}

TEST_CASE("compute_stats on the two-document corpus") {
    Corpus c = shard_documents({{"d1", "", "a a b"}, {"d2", "", "b"}}, 2);
    CollectionStats s = compute_stats(c);
    CHECK(s.total_tokens == 4);
    CHECK(s.doc_count == 2);
    CHECK(s.cf == std::map<std::string, std::uint64_t, std::less<>>{{"a", 2}, {"b", 2}});
    CHECK(s.doc_len == std::map<std::string, std::uint64_t, std::less<>>{{"d1", 3}, {"d2", 1}});
    CHECK(s.collection_frequency("a") == 2);
    CHECK(s.collection_frequency("z") == 0);
}

TEST_CASE("compute_stats on an empty corpus") {
    CollectionStats s = compute_stats(shard_documents({}, 3));
    CHECK(s == CollectionStats{});
}

TEST_CASE("documents without tokens still count") {
    CollectionStats s = compute_stats(shard_documents({{"d1", "", "!!"}, {"d2", "", "x"}}, 1));
    CHECK(s.doc_count == 2);
    CHECK(s.doc_len.at("d1") == 0);
    CHECK(s.total_tokens == 1);
}

TEST_CASE("strip_html changes what is counted") {
    Corpus c = shard_documents({{"d1", "", "<p class=\"x\">word</p>"}}, 1);
    CHECK(compute_stats(c).cf.count("class") == 1);
    StatsOptions o;
    o.strip_html = true;
    CollectionStats s = compute_stats(c, o);
    CHECK(s.total_tokens == 1);
    CHECK(s.cf.count("word") == 1);
}

TEST_CASE("1000-doc synthetic corpus matches a direct count, for any workers and shards") {
    auto docs = generate_synthetic(1000, 400, 21);
    std::map<std::string, std::uint64_t, std::less<>> cf;
    std::map<std::string, std::uint64_t, std::less<>> len;
    std::uint64_t total = 0;
    for (const auto& d : docs) {
        auto toks = testing::oracle_tokenize(d.text);
        len[d.doc_id] = toks.size();
        for (const auto& t : toks) cf[t]++;
        total += toks.size();
    }
    for (std::size_t shards : {1u, 3u, 16u}) {
        Corpus c = shard_documents(docs, shards);
        for (std::size_t workers : {1u, 2u, 4u, 8u}) {
            StatsOptions o;
            o.worker_count = workers;
            engine::ShuffleStats<StatKey> shuffle;
            CollectionStats s = compute_stats(c, o, &shuffle);
            CHECK(s.total_tokens == total);
            CHECK(s.doc_count == 1000);
            CHECK(s.cf == cf);
            CHECK(s.doc_len == len);
            CHECK(shuffle.records_after_combine <= shuffle.records_emitted_by_maps);
        }
    }
}

TEST_CASE("property: conservation on random corpora") {
    Rng rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        auto docs = generate_synthetic(1 + rng.below(80), 2 + rng.below(50), rng.next());
        CollectionStats s = compute_stats(shard_documents(docs, 1 + rng.below(5)));
        std::uint64_t sum_cf = 0;
        std::uint64_t sum_len = 0;
        for (const auto& [t, n] : s.cf) {
            CHECK(n >= 1);
            sum_cf += n;
        }
        for (const auto& [d, n] : s.doc_len) sum_len += n;
        CHECK(sum_cf == s.total_tokens);
        CHECK(sum_len == s.total_tokens);
    }
}

TEST_CASE("stats save and load") {
    TempDir dir;
    CollectionStats s = compute_stats(shard_documents(generate_synthetic(200, 100, 4), 2));
    save_stats(s, dir.file("s.tsv"));
    CHECK(load_stats(dir.file("s.tsv")) == s);

    save_stats(CollectionStats{}, dir.file("empty.tsv"));
    CHECK(load_stats(dir.file("empty.tsv")) == CollectionStats{});

    save_stats(s, dir.file("s.tsv.gz"));
    CHECK(load_stats(dir.file("s.tsv.gz")) == s);

    // Terms with characters that need escaping survive.
    CollectionStats odd;
    odd.total_tokens = 2;
    odd.doc_count = 1;
    odd.cf = {{"a\tb", 1}, {"c\\", 1}};
    odd.doc_len = {{"d", 2}};
    save_stats(odd, dir.file("odd.tsv"));
    CHECK(load_stats(dir.file("odd.tsv")) == odd);
}

TEST_CASE("stats load errors") {
    TempDir dir;
    CollectionStats s = compute_stats(shard_documents({{"d1", "", "a a b"}, {"d2", "", "b"}}, 1));
    save_stats(s, dir.file("s.tsv"));
    std::string full = testing::read_file(dir.file("s.tsv"));

    auto kind_for = [&](const std::string& content) {
        testing::write_file(dir.file("bad.tsv"), content);
        try {
            load_stats(dir.file("bad.tsv"));
        } catch (const Error& e) {
            return e.kind();
        }
        FAIL("accepted malformed stats: " << content);
        return ErrorKind::io;
    };
    CHECK(kind_for(full.substr(0, full.rfind('\n', full.size() - 2) + 1)) == ErrorKind::format);
    CHECK(kind_for("") == ErrorKind::format);
    CHECK(kind_for("mirex-stats\t2\t0\t0\t0\n") == ErrorKind::format);
    CHECK(kind_for("something-else\t1\t0\t0\t0\n") == ErrorKind::format);
    std::string wrong_total = full;
    wrong_total.replace(wrong_total.find("\t4\t"), 3, "\t5\t");
    CHECK(kind_for(wrong_total) == ErrorKind::format);
    CHECK(kind_for(full + "cf\textra\t1\n") == ErrorKind::format);
    try {
        load_stats(dir.file("missing.tsv"));
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::io);
    }
}
