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

#include "bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <map>
#include <numeric>
#include <tuple>

#include "baseline.hpp"
#include "error.hpp"
#include "io.hpp"
#include "random.hpp"

namespace mirex {

std::string_view to_string(BenchSystem s) { return s == BenchSystem::scan ? "scan" : "baseline"; }

std::vector<Query> select_queries(std::span<const Query> pool, std::size_t size, std::size_t trial,
                                  std::uint64_t seed, bool nested) {
    if (size == 0 || size > pool.size()) {
        fail(ErrorKind::config, "query set size " + std::to_string(size) + " outside [1, " +
                                    std::to_string(pool.size()) + "]");
    }
    Rng rng(nested ? mix_seed(seed, 0, trial) : mix_seed(seed, size, trial));
    std::vector<std::size_t> order(pool.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    // A nested draw shuffles the whole pool so every size takes a prefix of
    // the same permutation; otherwise only the first `size` slots are drawn.
    std::size_t draws = nested ? pool.size() : size;
    for (std::size_t i = 0; i < draws && i + 1 < order.size(); ++i) {
        std::size_t j = i + rng.below(order.size() - i);
        std::swap(order[i], order[j]);
    }
    std::vector<Query> subset;
    subset.reserve(size);
    for (std::size_t i = 0; i < size; ++i) subset.push_back(pool[order[i]]);
    return subset;
}

std::vector<BenchPoint> run_bench(const std::string& corpus_path, std::span<const Query> pool,
                                  const CollectionStats& stats, const BenchConfig& config) {
    if (config.sizes.empty()) fail(ErrorKind::config, "no query set sizes given");
    if (config.trials == 0) fail(ErrorKind::config, "trials must be positive");
    if (!std::is_sorted(config.sizes.begin(), config.sizes.end()))
        fail(ErrorKind::config, "query set sizes must be ascending");
    for (auto s : config.sizes) {
        if (s == 0 || s > pool.size())
            fail(ErrorKind::config, "query set size " + std::to_string(s) + " exceeds the pool of " +
                                        std::to_string(pool.size()));
    }

    using clock = std::chrono::steady_clock;
    auto seconds_since = [](clock::time_point start) {
        double s = std::chrono::duration<double>(clock::now() - start).count();
        return std::max(s, 1e-9);
    };

    const InvertedIndex index = InvertedIndex::build(read_corpus(corpus_path, 1), config.search.strip_html);

    std::vector<BenchPoint> points;
    for (std::size_t size : config.sizes) {
        for (std::size_t trial = 0; trial < config.trials; ++trial) {
            std::vector<Query> queries = select_queries(pool, size, trial, config.seed, config.nested);

            auto start = clock::now();
            {
                Corpus corpus = read_corpus(corpus_path, config.shard_count);
                SearchResult r = sequential_search(corpus, queries, stats, config.search);
                (void)r;
            }
            double scan = seconds_since(start);
            points.push_back(BenchPoint{BenchSystem::scan, size, trial, scan, scan / static_cast<double>(size)});

            start = clock::now();
            {
                ResultSet r = index_search_all(index, queries, config.search.scoring, config.search.top_k);
                (void)r;
            }
            double base = seconds_since(start);
            points.push_back(BenchPoint{BenchSystem::baseline, size, trial, base, base / static_cast<double>(size)});
        }
    }
    std::sort(points.begin(), points.end(), [](const BenchPoint& a, const BenchPoint& b) {
        return std::tie(a.system, a.query_count, a.trial) < std::tie(b.system, b.query_count, b.trial);
    });
    return points;
}

std::vector<BenchSummary> summarize(std::span<const BenchPoint> points) {
    std::map<std::pair<BenchSystem, std::size_t>, std::pair<double, std::size_t>> sums;
    for (const auto& p : points) {
        auto& [total, n] = sums[{p.system, p.query_count}];
        total += p.wall_seconds;
        ++n;
    }
    std::vector<BenchSummary> out;
    for (const auto& [key, value] : sums) {
        double mean = value.first / static_cast<double>(value.second);
        out.push_back(BenchSummary{key.first, key.second, mean, mean / static_cast<double>(key.second)});
    }
    return out;
}

std::string emit_csv(std::span<const BenchPoint> points) {
    std::string out = "system,query_count,trial,wall_seconds,per_query_seconds\n";
    char buf[160];
    for (const auto& p : points) {
        std::snprintf(buf, sizeof buf, "%s,%zu,%zu,%.6f,%.6f\n", std::string(to_string(p.system)).c_str(), p.query_count,
                      p.trial, p.wall_seconds, p.per_query_seconds);
        out += buf;
    }
    return out;
}

std::vector<BenchPoint> parse_csv(std::string_view csv) {
    std::vector<BenchPoint> points;
    std::size_t start = 0;
    std::size_t line_no = 0;
    while (start < csv.size()) {
        std::size_t nl = csv.find('\n', start);
        std::string_view line = csv.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
        start = nl == std::string_view::npos ? csv.size() : nl + 1;
        ++line_no;
        if (line_no == 1) {
            if (line != "system,query_count,trial,wall_seconds,per_query_seconds")
                fail(ErrorKind::parse, "unexpected benchmark CSV header");
            continue;
        }
        std::vector<std::string_view> f;
        std::size_t pos = 0;
        while (true) {
            std::size_t comma = line.find(',', pos);
            f.push_back(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
            if (comma == std::string_view::npos) break;
            pos = comma + 1;
        }
        if (f.size() != 5) fail(ErrorKind::parse, "line " + std::to_string(line_no) + ": expected 5 columns");
        BenchPoint p;
        if (f[0] == "scan") p.system = BenchSystem::scan;
        else if (f[0] == "baseline") p.system = BenchSystem::baseline;
        else fail(ErrorKind::parse, "line " + std::to_string(line_no) + ": unknown system");
        auto num = [&](std::string_view s, auto& out) {
            auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
            if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
                fail(ErrorKind::parse, "line " + std::to_string(line_no) + ": bad number '" + std::string(s) + "'");
        };
        num(f[1], p.query_count);
        num(f[2], p.trial);
        num(f[3], p.wall_seconds);
        num(f[4], p.per_query_seconds);
        points.push_back(p);
    }
    if (line_no == 0) fail(ErrorKind::parse, "empty benchmark CSV");
    return points;
}

}  // namespace mirex
