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

#include <cmath>
#include <sstream>

#include "error.hpp"
#include "eval.hpp"
#include "random.hpp"
#include "stats.hpp"
#include "support.hpp"

using namespace mirex;
using testing::TempDir;

namespace {

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::io;
}

RunFile run_of(const std::string& q, const std::vector<std::string>& docs) {
    RunFile run;
    run.run_tag = "t";
    double score = 100.0;
    std::uint32_t rank = 0;
    for (const auto& d : docs) run.rows.push_back({q, d, ++rank, score -= 1.0});
    return run;
}

Qrels qrels_of(const std::string& q, const std::vector<std::string>& relevant) {
    Qrels qrels;
    auto& j = qrels.judgments[q];
    for (const auto& d : relevant) j[d] = 1;
    return qrels;
}

}  // namespace

TEST_CASE("write_run format") {
    ResultSet results;
    results.emplace("q1", RankedList(10));
    results.at("q1").insert({"d9", 3.2454});
    CHECK(write_run(results, "mirex1") == "q1 Q0 d9 1 3.245400 mirex1\n");

    results.emplace("q0", RankedList(10));
    results.emplace("q2", RankedList(10));
    results.at("q2").insert({"a", 1.0});
    results.at("q2").insert({"b", 2.0});
    CHECK(write_run(results, "t") == "q1 Q0 d9 1 3.245400 t\nq2 Q0 b 1 2.000000 t\nq2 Q0 a 2 1.000000 t\n");
    CHECK(kind_of([&] { write_run(results, ""); }) == ErrorKind::config);
    CHECK(kind_of([&] { write_run(results, "two words"); }) == ErrorKind::config);
}

TEST_CASE("property: run round trip") {
    Rng rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        ResultSet results;
        std::size_t nq = rng.below(6);
        for (std::size_t q = 0; q < nq; ++q) {
            RankedList list(1 + rng.below(20));
            std::size_t n = rng.below(30);
            for (std::size_t i = 0; i < n; ++i) {
                // Six-decimal scores so the text form is exact.
                double score = static_cast<double>(1 + rng.below(5000000)) / 1e6;
                list.insert({"d" + std::to_string(i), score});
            }
            results.emplace("q" + std::to_string(q), std::move(list));
        }
        std::string text = write_run(results, "tag");
        RunFile run = parse_run(text);
        CHECK(format_run(run) == text);
        CHECK(parse_run(format_run(run)) == run);
        std::size_t rows = 0;
        for (const auto& [q, list] : results) {
            for (std::size_t i = 0; i < list.size(); ++i) {
                const RunRow& row = run.rows[rows++];
                CHECK(row.query_id == q);
                CHECK(row.doc_id == list.entries()[i].doc_id);
                CHECK(row.rank == i + 1);
                CHECK(row.score == doctest::Approx(list.entries()[i].score).epsilon(1e-12));
            }
        }
        CHECK(rows == run.rows.size());
    }
}

TEST_CASE("run parse rejects malformed input") {
    auto parse_kind = [&](const std::string& text) { return kind_of([&] { parse_run(text); }); };
    CHECK(parse_kind("q1 Q0 d1 1 1.0\n") == ErrorKind::parse);
    CHECK(parse_kind("q1 Q0 d1 1 1.0 t extra\n") == ErrorKind::parse);
    CHECK(parse_kind("q1 Q0 d1 2 1.0 t\n") == ErrorKind::parse);
    CHECK(parse_kind("q1 Q0 d1 1 1.0 t\nq1 Q0 d2 3 0.5 t\n") == ErrorKind::parse);
    CHECK(parse_kind("q1 Q0 d1 1 1.0 t\nq1 Q0 d2 2 1.5 t\n") == ErrorKind::parse);
    CHECK(parse_kind("q1 Q0 d1 1 1.0 t\nq1 Q0 d1 2 0.5 t\n") == ErrorKind::parse);
    CHECK(parse_kind("q1 Q0 d1 1 1.0 a\nq2 Q0 d1 1 1.0 b\n") == ErrorKind::parse);
    CHECK(parse_kind("q1 Q0 d1 x 1.0 t\n") == ErrorKind::parse);
    CHECK(parse_kind("q1 Q0 d1 0 1.0 t\n") == ErrorKind::parse);
    CHECK(parse_kind("q1 Q0 d1 1 abc t\n") == ErrorKind::parse);
    CHECK(parse_run("").rows.empty());
    CHECK(parse_run("q1 Q0 d1 1 1.0 t\n\nq1 Q0 d2 2 0.5 t\n").rows.size() == 2);
    RunFile ok = parse_run("q1 Q0 d1 1 2.5 t\nq1 Q0 d2 2 2.5 t\n");
    CHECK(ok.rows.size() == 2);
    CHECK(ok.run_tag == "t");
}

TEST_CASE("qrels parse") {
    Qrels q = parse_qrels("q1 0 d1 1\nq1 0 d2 0\nq2 0 d1 2\n");
    CHECK(q.relevant_count("q1") == 1);
    CHECK(q.relevant_count("q2") == 1);
    CHECK(q.relevant_count("q3") == 0);
    CHECK(q.is_relevant("q2", "d1"));
    CHECK_FALSE(q.is_relevant("q1", "d2"));
    CHECK(parse_qrels(write_qrels(q)).judgments == q.judgments);
    CHECK(kind_of([] { parse_qrels("q1 0 d1\n"); }) == ErrorKind::parse);
    CHECK(kind_of([] { parse_qrels("q1 0 d1 1 x\n"); }) == ErrorKind::parse);
    CHECK(kind_of([] { parse_qrels("q1 0 d1 -1\n"); }) == ErrorKind::parse);
    CHECK(kind_of([] { parse_qrels("q1 0 d1 r\n"); }) == ErrorKind::parse);
    CHECK(kind_of([] { parse_qrels("q1 0 d1 1\nq1 0 d1 0\n"); }) == ErrorKind::integrity);
}

TEST_CASE("precision hand cases") {
    RunFile run = run_of("q", {"R1", "N1", "R2", "N2", "N3"});
    Qrels qrels = qrels_of("q", {"R1", "R2", "R3"});
    qrels.judgments["q"]["N1"] = 0;
    auto p5 = precision_at_k(run, qrels, 5);
    CHECK(p5.per_query.at("q") == 0.4);
    CHECK(p5.mean == 0.4);
    // Missing ranks count as non-relevant.
    CHECK(precision_at_k(run, qrels, 10).per_query.at("q") == 0.2);
    CHECK(kind_of([&] { precision_at_k(run, qrels, 0); }) == ErrorKind::config);

    Qrels judged_only = qrels_of("empty", {"x"});
    auto zero = precision_at_k(RunFile{"t", {}}, judged_only, 5);
    CHECK(zero.per_query.at("empty") == 0.0);
}

TEST_CASE("average precision hand cases") {
    CHECK(mean_average_precision(run_of("q", {"R"}), qrels_of("q", {"R"})) == 1.0);
    double ap = mean_average_precision(run_of("q", {"A", "x", "B"}), qrels_of("q", {"A", "B"}));
    CHECK(ap == (1.0 / 1.0 + 2.0 / 3.0) / 2.0);
    CHECK(ap == doctest::Approx(0.8333).epsilon(1e-4));
    // Relevant documents never retrieved still count in the denominator.
    CHECK(mean_average_precision(run_of("q", {"A"}), qrels_of("q", {"A", "B"})) == 0.5);
    // The cutoff limits which ranks are considered.
    CHECK(mean_average_precision(run_of("q", {"x", "A"}), qrels_of("q", {"A"}), 1) == 0.0);

    Qrels none;
    none.judgments["q"]["d"] = 0;
    std::vector<std::string> warnings;
    CHECK(mean_average_precision(run_of("q", {"d"}), none, 1000, &warnings) == 0.0);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("no relevant") != std::string::npos);
}

TEST_CASE("unjudged run queries are excluded with a warning") {
    RunFile run = run_of("judged", {"R"});
    RunFile extra = run_of("stray", {"R"});
    run.rows.insert(run.rows.end(), extra.rows.begin(), extra.rows.end());
    Qrels qrels = qrels_of("judged", {"R"});
    auto p = precision_at_k(run, qrels, 5);
    CHECK(p.per_query.size() == 1);
    CHECK(p.mean == 0.2);
    REQUIRE(p.warnings.size() == 1);
    CHECK(p.warnings[0].find("stray") != std::string::npos);
    Evaluation e = evaluate(run, qrels);
    CHECK(e.map == 1.0);
    CHECK(e.per_query.size() == 1);
    CHECK_FALSE(e.warnings.empty());
}

TEST_CASE("50-query fixture matches the scripted oracle") {
    std::string dir = MIREX_TEST_DATA;
    RunFile run = read_run(dir + "/eval50.run");
    Qrels qrels = read_qrels(dir + "/eval50.qrels");
    Evaluation e = evaluate(run, qrels);
    std::istringstream expected(testing::read_file(dir + "/eval50.expected"));
    std::string line;
    std::size_t matched = 0;
    std::map<std::string, const QueryEvaluation*> per;
    for (const auto& qe : e.per_query) per[qe.query_id] = &qe;
    while (std::getline(expected, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream f(line);
        std::string q;
        double p5, p10, p20, ap;
        f >> q >> p5 >> p10 >> p20 >> ap;
        if (q == "all") {
            CHECK(std::fabs(e.mean_p5 - p5) <= 1e-6);
            CHECK(std::fabs(e.mean_p10 - p10) <= 1e-6);
            CHECK(std::fabs(e.mean_p20 - p20) <= 1e-6);
            CHECK(std::fabs(e.map - ap) <= 1e-6);
        } else {
            REQUIRE(per.count(q) == 1);
            CHECK(std::fabs(per[q]->p5 - p5) <= 1e-6);
            CHECK(std::fabs(per[q]->p10 - p10) <= 1e-6);
            CHECK(std::fabs(per[q]->p20 - p20) <= 1e-6);
            CHECK(std::fabs(per[q]->average_precision - ap) <= 1e-6);
        }
        ++matched;
    }
    CHECK(matched == per.size() + 1);
    CHECK(per.size() == qrels.judgments.size());
    for (const auto& qe : e.per_query) {
        for (double v : {qe.p5, qe.p10, qe.p20, qe.average_precision}) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
    }
}

TEST_CASE("evaluation table") {
    Evaluation e = evaluate(run_of("q", {"A", "x", "B"}), qrels_of("q", {"A", "B"}));
    std::string table = format_evaluation(e, true);
    CHECK(table.find("P@5") != std::string::npos);
    CHECK(table.find("MAP") != std::string::npos);
    CHECK(table.find("0.8333") != std::string::npos);
    CHECK(format_evaluation(e, false).find("\nq ") == std::string::npos);
}

TEST_CASE("synthetic qrels") {
    std::vector<Document> docs = {{"d1", "", "a b"}, {"d2", "", "a"}, {"d3", "", "b a c"}, {"d4", "", "z"}};
    std::vector<Query> qs = {{"q", "a b"}};
    Qrels q = synthetic_qrels(shard_documents(docs, 2), qs, 10);
    CHECK(q.judgments.at("q") == std::map<std::string, int>{{"d1", 1}, {"d2", 0}, {"d3", 1}});
    Qrels capped = synthetic_qrels(shard_documents(docs, 2), qs, 1);
    CHECK(capped.relevant_count("q") == 1);
}

TEST_CASE("files") {
    TempDir dir;
    testing::write_file(dir.file("run.txt"), "q1 Q0 d1 1 1.0 t\nq1 Q0 d1 2 0.5 t\n");
    try {
        read_run(dir.file("run.txt"));
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::parse);
        CHECK(std::string(e.what()).find("run.txt") != std::string::npos);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    CHECK(kind_of([&] { read_qrels(dir.file("missing")); }) == ErrorKind::io);
}
