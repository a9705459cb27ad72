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

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "corpus.hpp"
#include "search.hpp"
#include "stats.hpp"

namespace mirex {

enum class BenchSystem { scan, baseline };

std::string_view to_string(BenchSystem s);

struct BenchPoint {
    BenchSystem system = BenchSystem::scan;
    std::size_t query_count = 0;
    std::size_t trial = 0;
    double wall_seconds = 0.0;
    double per_query_seconds = 0.0;

    friend bool operator==(const BenchPoint&, const BenchPoint&) = default;
};

struct BenchConfig {
    std::vector<std::size_t> sizes;  // ascending
    std::size_t trials = 3;
    std::uint64_t seed = 1;
    bool nested = false;  // smaller query sets are prefixes of larger ones
    std::size_t shard_count = 4;
    SearchOptions search;
};

/// The query subset used for one (size, trial) cell. Sampled without
/// replacement and fully determined by (seed, size, trial, nested).
std::vector<Query> select_queries(std::span<const Query> pool, std::size_t size, std::size_t trial,
                                  std::uint64_t seed, bool nested);

/// Times the scan (corpus read from disk plus the search job) and a loop of
/// index searches (index built up front, untimed) for every size and trial.
/// Points come back ordered by (system, query_count, trial).
std::vector<BenchPoint> run_bench(const std::string& corpus_path, std::span<const Query> pool,
                                  const CollectionStats& stats, const BenchConfig& config);

struct BenchSummary {
    BenchSystem system;
    std::size_t query_count;
    double mean_wall_seconds;
    double mean_per_query_seconds;
};

/// Means over trials per (system, query_count).
std::vector<BenchSummary> summarize(std::span<const BenchPoint> points);

/// `system,query_count,trial,wall_seconds,per_query_seconds` plus one row per
/// point, 6-decimal fixed point.
std::string emit_csv(std::span<const BenchPoint> points);
std::vector<BenchPoint> parse_csv(std::string_view csv);

}  // namespace mirex
