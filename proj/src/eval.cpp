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

#include "eval.hpp"

#include <charconv>
#include <cstdio>
#include <set>
#include <unordered_set>

#include "error.hpp"
#include "io.hpp"
#include "scoring.hpp"
#include "stats.hpp"

namespace mirex {

namespace {

std::string line_error(std::size_t line, const std::string& what) {
    return "line " + std::to_string(line) + ": " + what;
}

template <class Fn>
void for_each_line(std::string_view text, Fn&& fn) {
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t nl = text.find('\n', start);
        std::string_view line = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        fn(line, line_no);
        if (nl == std::string_view::npos) break;
        start = nl + 1;
    }
}

template <class T>
bool parse_integer(std::string_view s, T& out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return !s.empty() && ec == std::errc{} && ptr == s.data() + s.size();
}

bool parse_double(std::string_view s, double& out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return !s.empty() && ec == std::errc{} && ptr == s.data() + s.size();
}

std::string format_score(double score) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", score);
    return buf;
}

}  // namespace

std::map<std::string, std::vector<const RunRow*>> RunFile::by_query() const {
    std::map<std::string, std::vector<const RunRow*>> grouped;
    for (const auto& row : rows) grouped[row.query_id].push_back(&row);
    for (auto& [q, list] : grouped) {
        std::sort(list.begin(), list.end(), [](const RunRow* a, const RunRow* b) { return a->rank < b->rank; });
    }
    return grouped;
}

std::size_t Qrels::relevant_count(const std::string& query_id) const {
    auto it = judgments.find(query_id);
    if (it == judgments.end()) return 0;
    std::size_t n = 0;
    for (const auto& [doc, grade] : it->second) n += grade >= 1 ? 1 : 0;
    return n;
}

bool Qrels::is_relevant(const std::string& query_id, const std::string& doc_id) const {
    auto it = judgments.find(query_id);
    if (it == judgments.end()) return false;
    auto d = it->second.find(doc_id);
    return d != it->second.end() && d->second >= 1;
}

std::string format_run(const RunFile& run) {
    std::string out;
    for (const auto& row : run.rows) {
        out += row.query_id;
        out += " Q0 ";
        out += row.doc_id;
        out += ' ';
        out += std::to_string(row.rank);
        out += ' ';
        out += format_score(row.score);
        out += ' ';
        out += run.run_tag;
        out += '\n';
    }
    return out;
}


std::string write_run(const ResultSet& results, const std::string& run_tag) {
    if (!valid_identifier(run_tag)) fail(ErrorKind::config, "run tag must be a non-empty token");
    RunFile run;
    run.run_tag = run_tag;
    for (const auto& [query_id, list] : results) {
        std::uint32_t rank = 0;
        for (const auto& e : list.entries()) run.rows.push_back(RunRow{query_id, e.doc_id, ++rank, e.score});
    }
    return format_run(run);
}

RunFile parse_run(std::string_view text) {
    RunFile run;
    std::map<std::string, std::pair<std::uint32_t, double>, std::less<>> last;  // query -> (rank, score)
    std::map<std::string, std::unordered_set<std::string>, std::less<>> seen_docs;
    for_each_line(text, [&](std::string_view line, std::size_t line_no) {
        auto f = io::split_ws(line);
        if (f.empty() && line.empty()) return;
        if (f.size() != 6) fail(ErrorKind::parse, line_error(line_no, "expected 6 columns, found " + std::to_string(f.size())));
        RunRow row;
        row.query_id = std::string(f[0]);
        row.doc_id = std::string(f[2]);
        if (!parse_integer(f[3], row.rank) || row.rank == 0) fail(ErrorKind::parse, line_error(line_no, "bad rank"));
        if (!parse_double(f[4], row.score)) fail(ErrorKind::parse, line_error(line_no, "bad score"));
        if (run.rows.empty() && run.run_tag.empty()) {
            run.run_tag = std::string(f[5]);
        } else if (f[5] != run.run_tag) {
            fail(ErrorKind::parse, line_error(line_no, "run tag changes from '" + run.run_tag + "'"));
        }
        auto it = last.find(row.query_id);
        std::uint32_t expected = it == last.end() ? 1 : it->second.first + 1;
        if (row.rank != expected)
            fail(ErrorKind::parse, line_error(line_no, "rank " + std::to_string(row.rank) + " where " +
                                                           std::to_string(expected) + " was expected"));
        if (it != last.end() && row.score > it->second.second)
            fail(ErrorKind::parse, line_error(line_no, "score increases with rank"));
        if (!seen_docs[row.query_id].insert(row.doc_id).second)
            fail(ErrorKind::parse, line_error(line_no, "doc '" + row.doc_id + "' listed twice for one query"));
        last[row.query_id] = {row.rank, row.score};
        run.rows.push_back(std::move(row));
    });
    return run;
}

RunFile read_run(const std::string& path) {
    try {
        return parse_run(io::read_text_file(path));
    } catch (const Error& e) {
        throw Error(e.kind(), path + ": " + e.what());
    }
}

Qrels parse_qrels(std::string_view text) {
    Qrels qrels;
    for_each_line(text, [&](std::string_view line, std::size_t line_no) {
        auto f = io::split_ws(line);
        if (f.empty() && line.empty()) return;
        if (f.size() != 4) fail(ErrorKind::parse, line_error(line_no, "expected 4 columns, found " + std::to_string(f.size())));
        int grade = 0;
        if (!parse_integer(f[3], grade) || grade < 0) fail(ErrorKind::parse, line_error(line_no, "bad relevance grade"));
        auto& docs = qrels.judgments[std::string(f[0])];
        if (!docs.emplace(std::string(f[2]), grade).second)
            fail(ErrorKind::integrity, line_error(line_no, "duplicate judgment"));
    });
    return qrels;
}

Qrels read_qrels(const std::string& path) {
    try {
        return parse_qrels(io::read_text_file(path));
    } catch (const Error& e) {
        throw Error(e.kind(), path + ": " + e.what());
    }
}

std::string write_qrels(const Qrels& qrels) {
    std::string out;
    for (const auto& [q, docs] : qrels.judgments) {
        for (const auto& [d, grade] : docs) out += q + " 0 " + d + " " + std::to_string(grade) + "\n";
    }
    return out;
}

namespace {

double precision_of(const std::vector<const RunRow*>& rows, const Qrels& qrels, const std::string& q, std::size_t k) {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < rows.size() && i < k; ++i) hits += qrels.is_relevant(q, rows[i]->doc_id) ? 1 : 0;
    return static_cast<double>(hits) / static_cast<double>(k);
}

double average_precision_of(const std::vector<const RunRow*>& rows, const Qrels& qrels, const std::string& q,
                            std::size_t cutoff, std::size_t& relevant_retrieved) {
    std::size_t total = qrels.relevant_count(q);
    relevant_retrieved = 0;
    double sum = 0.0;
    for (std::size_t i = 0; i < rows.size() && i < cutoff; ++i) {
        if (qrels.is_relevant(q, rows[i]->doc_id)) {
            ++relevant_retrieved;
            sum += static_cast<double>(relevant_retrieved) / static_cast<double>(i + 1);
        }
    }
    return total == 0 ? 0.0 : sum / static_cast<double>(total);
}

std::vector<std::string> unjudged_warnings(const std::map<std::string, std::vector<const RunRow*>>& grouped,
                                           const Qrels& qrels) {
    std::vector<std::string> warnings;
    for (const auto& [q, rows] : grouped) {
        if (!qrels.judgments.count(q)) warnings.push_back("query '" + q + "' has no judgments; excluded from means");
    }
    return warnings;
}

const std::vector<const RunRow*>& rows_for(const std::map<std::string, std::vector<const RunRow*>>& grouped,
                                           const std::string& q) {
    static const std::vector<const RunRow*> none;
    auto it = grouped.find(q);
    return it == grouped.end() ? none : it->second;
}

}  // namespace

PrecisionResult precision_at_k(const RunFile& run, const Qrels& qrels, std::size_t k) {
    if (k == 0) fail(ErrorKind::config, "precision cutoff must be positive");
    auto grouped = run.by_query();
    PrecisionResult result;
    result.warnings = unjudged_warnings(grouped, qrels);
    double sum = 0.0;
    for (const auto& [q, docs] : qrels.judgments) {
        double p = precision_of(rows_for(grouped, q), qrels, q, k);
        result.per_query[q] = p;
        sum += p;
    }
    if (!qrels.judgments.empty()) result.mean = sum / static_cast<double>(qrels.judgments.size());
    return result;
}

double mean_average_precision(const RunFile& run, const Qrels& qrels, std::size_t cutoff,
                              std::vector<std::string>* warnings) {
    auto grouped = run.by_query();
    double sum = 0.0;
    for (const auto& [q, docs] : qrels.judgments) {
        std::size_t found = 0;
        sum += average_precision_of(rows_for(grouped, q), qrels, q, cutoff, found);
        if (warnings && qrels.relevant_count(q) == 0) warnings->push_back("query '" + q + "' has no relevant documents");
    }
    return qrels.judgments.empty() ? 0.0 : sum / static_cast<double>(qrels.judgments.size());
}

Evaluation evaluate(const RunFile& run, const Qrels& qrels, std::size_t cutoff) {
    auto grouped = run.by_query();
    Evaluation e;
    e.warnings = unjudged_warnings(grouped, qrels);
    for (const auto& [q, docs] : qrels.judgments) {
        const auto& rows = rows_for(grouped, q);
        QueryEvaluation qe;
        qe.query_id = q;
        qe.retrieved = rows.size();
        qe.relevant = qrels.relevant_count(q);
        qe.p5 = precision_of(rows, qrels, q, 5);
        qe.p10 = precision_of(rows, qrels, q, 10);
        qe.p20 = precision_of(rows, qrels, q, 20);
        qe.average_precision = average_precision_of(rows, qrels, q, cutoff, qe.relevant_retrieved);
        if (qe.relevant == 0) e.warnings.push_back("query '" + q + "' has no relevant documents");
        e.per_query.push_back(std::move(qe));
    }
    if (!e.per_query.empty()) {
        for (const auto& qe : e.per_query) {
            e.mean_p5 += qe.p5;
            e.mean_p10 += qe.p10;
            e.mean_p20 += qe.p20;
            e.map += qe.average_precision;
        }
        double n = static_cast<double>(e.per_query.size());
        e.mean_p5 /= n;
        e.mean_p10 /= n;
        e.mean_p20 /= n;
        e.map /= n;
    }
    return e;
}

std::string format_evaluation(const Evaluation& e, bool per_query) {
    std::string out;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-16s %8s %8s %8s %8s\n", "query", "P@5", "P@10", "P@20", "MAP");
    out += buf;
    if (per_query) {
        for (const auto& q : e.per_query) {
            std::snprintf(buf, sizeof buf, "%-16s %8.4f %8.4f %8.4f %8.4f\n", q.query_id.c_str(), q.p5, q.p10, q.p20,
                          q.average_precision);
            out += buf;
        }
    }
    std::snprintf(buf, sizeof buf, "%-16s %8.4f %8.4f %8.4f %8.4f\n", "all", e.mean_p5, e.mean_p10, e.mean_p20, e.map);
    out += buf;
    return out;
}

Qrels synthetic_qrels(const Corpus& shards, std::span<const Query> queries, std::size_t max_relevant_per_query,
                      bool strip_html) {
    std::vector<QueryTerms> parsed;
    for (const auto& q : queries) parsed.push_back(QueryTerms::parse(q.text));

    std::vector<const Document*> docs;
    for (const auto& s : shards) {
        for (const auto& d : s.records) docs.push_back(&d);
    }
    std::sort(docs.begin(), docs.end(), [](const Document* a, const Document* b) { return a->doc_id < b->doc_id; });

    Qrels qrels;
    std::vector<std::size_t> relevant(queries.size(), 0);
    std::vector<std::size_t> partial(queries.size(), 0);
    for (const Document* doc : docs) {
        std::set<std::string, std::less<>> present;
        for_each_document_token(*doc, strip_html, [&](std::string_view t) { present.emplace(t); });
        for (std::size_t i = 0; i < queries.size(); ++i) {
            std::size_t matched = 0;
            for (const auto& [t, m] : parsed[i].terms) matched += present.count(t) ? 1 : 0;
            if (matched == 0) continue;
            if (matched == parsed[i].terms.size()) {
                if (relevant[i] < max_relevant_per_query) {
                    qrels.judgments[queries[i].query_id][doc->doc_id] = 1;
                    ++relevant[i];
                }
            } else if (partial[i] < max_relevant_per_query) {
                qrels.judgments[queries[i].query_id][doc->doc_id] = 0;
                ++partial[i];
            }
        }
    }
    return qrels;
}

}  // namespace mirex
