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

// Test helpers. The oracle_* functions are deliberately naive and share no
// code with the library beyond the Document/Query structs.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "corpus.hpp"

namespace testing {

class TempDir {
  public:
    TempDir() {
        std::string pattern = (std::filesystem::temp_directory_path() / "mirex-test-XXXXXX").string();
        if (mkdtemp(pattern.data()) == nullptr) throw std::runtime_error("mkdtemp failed");
        path_ = pattern;
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::string file(const std::string& name) const { return (path_ / name).string(); }

  private:
    std::filesystem::path path_;
};

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) throw std::runtime_error("cannot write " + path);
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline bool close_rel(double a, double b, double rel = 1e-9) {
    return std::fabs(a - b) <= rel * std::max({1.0, std::fabs(a), std::fabs(b)});
}

// ASCII-only tokenizer; refuses anything else so it is never used on input
// it cannot judge.
inline std::vector<std::string> oracle_tokenize(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (unsigned char c : s) {
        if (c >= 0x80) throw std::runtime_error("oracle tokenizer is ASCII-only");
        if (std::isalnum(c)) {
            cur += static_cast<char>(std::tolower(c));
        } else if (!cur.empty()) {
            out.push_back(cur);
            cur.clear();
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

struct OracleStats {
    double total = 0;
    std::map<std::string, double> cf;
};

inline OracleStats oracle_stats(const std::vector<mirex::Document>& docs) {
    OracleStats s;
    for (const auto& d : docs) {
        for (const auto& t : oracle_tokenize(d.text)) {
            s.cf[t] += 1;
            s.total += 1;
        }
    }
    return s;
}

// Direct evaluation of the ranking formula; returns a negative value for
// documents that do not match.
inline double oracle_score(const std::string& query, const std::vector<std::string>& doc_tokens,
                           const OracleStats& stats, double lambda, bool prior) {
    std::map<std::string, int> qtf;
    for (const auto& t : oracle_tokenize(query)) qtf[t]++;
    std::map<std::string, int> tf;
    for (const auto& t : doc_tokens) tf[t]++;
    double len = static_cast<double>(doc_tokens.size());
    double sum = 0;
    bool matched = false;
    for (const auto& [t, m] : qtf) {
        auto cf = stats.cf.find(t);
        auto f = tf.find(t);
        if (cf == stats.cf.end() || f == tf.end()) continue;
        matched = true;
        // The ratio is divided first so equal tf/|d| ratios give equal values.
        double ratio = static_cast<double>(f->second) / len;
        sum += m * std::log(1.0 + (lambda * stats.total) / ((1.0 - lambda) * cf->second) * ratio);
    }
    if (!matched) return -1.0;
    if (prior) sum += std::log(len);
    return sum;
}

struct OracleHit {
    std::string doc_id;
    double score;
};

inline std::vector<OracleHit> oracle_top_k(const std::vector<mirex::Document>& docs, const std::string& query,
                                           const OracleStats& stats, double lambda, bool prior, std::size_t k) {
    std::vector<OracleHit> all;
    for (const auto& d : docs) {
        double s = oracle_score(query, oracle_tokenize(d.text), stats, lambda, prior);
        if (s > 0) all.push_back({d.doc_id, s});
    }
    std::sort(all.begin(), all.end(), [](const OracleHit& a, const OracleHit& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.doc_id < b.doc_id;
    });
    if (all.size() > k) all.resize(k);
    return all;
}

}  // namespace testing
