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
#include "scoring.hpp"
#include "stats.hpp"
#include "support.hpp"
#include "text.hpp"

using namespace mirex;

namespace {

CollectionStats two_doc_stats() { return compute_stats(shard_documents({{"d1", "", "a a b"}, {"d2", "", "b"}}, 1)); }

const std::vector<std::string> kD1 = {"a", "a", "b"};
const std::vector<std::string> kD2 = {"b"};

}  // namespace

TEST_CASE("worked example: query 'a' on d1") {
    auto s = score_document(Query{"q", "a"}, kD1, two_doc_stats(), ScoringParams{});
    REQUIRE(s.has_value());
    // log(3) + log(1 + (0.85*2*4) / (0.15*2*3)), evaluated independently.
    CHECK(*s == doctest::Approx(3.245193133185574).epsilon(1e-12));
    CHECK(*s == doctest::Approx(3.2454).epsilon(1e-4));
    CHECK_FALSE(score_document(Query{"q", "a"}, kD2, two_doc_stats(), ScoringParams{}).has_value());
}

TEST_CASE("two-term query values") {
    CollectionStats st = two_doc_stats();
    CHECK(*score_document(Query{"q", "A b"}, kD1, st, {}) == doctest::Approx(4.809168671542917).epsilon(1e-12));
    CHECK(*score_document(Query{"q", "b a"}, kD2, st, {}) == doctest::Approx(2.512305623976115).epsilon(1e-12));
}

TEST_CASE("no-match gate") {
    CollectionStats st = two_doc_stats();
    for (const auto* doc : {&kD1, &kD2}) CHECK_FALSE(score_document(Query{"q", "z"}, *doc, st, {}).has_value());
    CHECK_FALSE(score_document(Query{"q", "a"}, std::vector<std::string>{}, st, {}).has_value());
    // A term the document has but the statistics do not know contributes nothing.
    std::vector<std::string> doc = {"z", "z"};
    CHECK_FALSE(score_document(Query{"q", "z"}, doc, st, {}).has_value());
}

TEST_CASE("lambda monotonicity for a matching term") {
    CollectionStats st = two_doc_stats();
    ScoringParams lo{0.5, true};
    ScoringParams hi{0.85, true};
    double a = *score_document(Query{"q", "a"}, kD1, st, lo);
    double b = *score_document(Query{"q", "a"}, kD1, st, hi);
    CHECK(b > a);
    CHECK(a == doctest::Approx(std::log(3.0) + 0.8472978603872034).epsilon(1e-12));
}

TEST_CASE("length prior switch") {
    CollectionStats st = two_doc_stats();
    double with = *score_document(Query{"q", "a"}, kD1, st, ScoringParams{0.85, true});
    double without = *score_document(Query{"q", "a"}, kD1, st, ScoringParams{0.85, false});
    CHECK(with - without == doctest::Approx(std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("query multiplicity multiplies a term's contribution") {
    CollectionStats st = two_doc_stats();
    ScoringParams p{0.85, false};
    double once = *score_document(Query{"q", "a"}, kD1, st, p);
    double twice = *score_document(Query{"q", "a a"}, kD1, st, p);
    CHECK(twice == doctest::Approx(2 * once).epsilon(1e-14));
}

TEST_CASE("lambda validation and missing totals") {
    CHECK_THROWS_AS(ScoringParams({0.0, true}).validate(), Error);
    CHECK_THROWS_AS(ScoringParams({1.0, true}).validate(), Error);
    CHECK_NOTHROW(ScoringParams({0.3, true}).validate());
    CollectionStats broken = two_doc_stats();
    broken.total_tokens = 0;
    try {
        score_document(Query{"q", "a"}, kD1, broken, {});
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::config);
    }
}

TEST_CASE("property: positivity, presence and tf monotonicity") {
    Rng rng(44);
    auto docs = generate_synthetic(120, 60, 31);
    CollectionStats st = compute_stats(shard_documents(docs, 1));
    auto queries = generate_queries(40, 60, 31);
    for (const auto& q : queries) {
        auto qt = testing::oracle_tokenize(q.text);
        for (const auto& d : docs) {
            auto toks = text::tokenize(d.text);
            for (bool prior : {true, false}) {
                ScoringParams p{0.1 + 0.8 * rng.uniform(), prior};
                auto s = score_document(q, toks, st, p);
                bool present = false;
                for (const auto& t : qt) present = present || std::count(toks.begin(), toks.end(), t) > 0;
                CHECK(s.has_value() == present);
                if (!s) continue;
                CHECK(*s > 0.0);
                // Turning a non-query token into a matching query term raises
                // tf with |d| fixed, so the score must go up.
                auto is_query_term = [&](const std::string& x) {
                    return std::find(qt.begin(), qt.end(), x) != qt.end();
                };
                auto match = std::find_if(toks.begin(), toks.end(), is_query_term);
                auto other = std::find_if_not(toks.begin(), toks.end(), is_query_term);
                if (other != toks.end()) {
                    auto bumped = toks;
                    bumped[static_cast<std::size_t>(other - toks.begin())] = *match;
                    CHECK(*score_document(q, bumped, st, p) > *s);
                }
                CHECK(*s == *score_document(q, toks, st, p));  // bit-identical on repeat
            }
        }
    }
}

TEST_CASE("rank_order_check") {
    CollectionStats st = compute_stats(shard_documents({{"b", "", "x y"}, {"a", "", "y x"}}, 1));
    auto r = rank_order_check(Query{"q", "x"}, std::vector<Document>{{"b", "", "x y"}, {"a", "", "y x"}}, st, {});
    REQUIRE(r.size() == 2);
    CHECK(r[0].score == r[1].score);
    CHECK(r[0].doc_id == "a");
    CHECK(r[1].doc_id == "b");

    std::vector<Document> one = {{"only", "", "x"}};
    auto single = rank_order_check(Query{"q", "x"}, one, compute_stats(shard_documents(one, 1)), {});
    REQUIRE(single.size() == 1);
    CHECK(single[0].doc_id == "only");
}

TEST_CASE("200-doc corpus, 20 queries: rank order matches the brute-force oracle") {
    auto docs = generate_synthetic(200, 120, 77);
    CollectionStats st = compute_stats(shard_documents(docs, 1));
    auto oracle_stats = testing::oracle_stats(docs);
    for (const auto& q : generate_queries(20, 120, 77)) {
        auto got = rank_order_check(q, docs, st, {});
        auto want = testing::oracle_top_k(docs, q.text, oracle_stats, 0.85, true, docs.size());
        REQUIRE(got.size() == want.size());
        for (std::size_t i = 0; i < got.size(); ++i) {
            CHECK(got[i].doc_id == want[i].doc_id);
            CHECK(testing::close_rel(got[i].score, want[i].score));
        }
    }
}
