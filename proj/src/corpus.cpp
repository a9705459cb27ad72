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

#include "corpus.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <unordered_set>

#include "error.hpp"
#include "io.hpp"
#include "random.hpp"

namespace mirex {

namespace {

std::string line_error(const std::string& path, std::size_t line, const std::string& what) {
    return path + ":" + std::to_string(line) + ": " + what;
}

std::string unescape_or_fail(std::string_view field, const std::string& path, std::size_t line) {
    auto value = io::unescape_field(field);
    if (!value) fail(ErrorKind::parse, line_error(path, line, "invalid escape sequence"));
    return std::move(*value);
}

}  // namespace

bool valid_identifier(std::string_view id) {
    if (id.empty()) return false;
    for (char c : id) {
        if (std::isspace(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

Corpus shard_documents(std::vector<Document> docs, std::size_t shard_count) {
    if (shard_count == 0) fail(ErrorKind::config, "shard count must be positive");
    Corpus shards(shard_count);
    for (std::size_t s = 0; s < shard_count; ++s) {
        shards[s].shard_index = s;
        shards[s].records.reserve(docs.size() / shard_count + 1);
    }
    for (std::size_t i = 0; i < docs.size(); ++i) {
        shards[i % shard_count].records.push_back(std::move(docs[i]));
    }
    return shards;
}

std::vector<Document> flatten(const Corpus& shards) {
    std::vector<Document> docs;
    docs.reserve(document_count(shards));
    for (std::size_t row = 0;; ++row) {
        bool any = false;
        for (const auto& shard : shards) {
            if (row < shard.records.size()) {
                docs.push_back(shard.records[row]);
                any = true;
            }
        }
        if (!any) break;
    }
    return docs;
}

std::size_t document_count(const Corpus& shards) {
    std::size_t n = 0;
    for (const auto& s : shards) n += s.records.size();
    return n;
}

Corpus read_corpus(const std::string& path, std::size_t shard_count) {
    if (shard_count == 0) fail(ErrorKind::config, "shard count must be positive");
    io::LineReader reader(path);
    std::vector<Document> docs;
    std::unordered_set<std::string> seen;
    std::string line;
    while (reader.next(line)) {
        auto fields = io::split_tabs(line);
        if (fields.size() != 3) {
            fail(ErrorKind::parse,
                 line_error(path, reader.line_number(),
                            "expected 3 tab-separated fields, found " + std::to_string(fields.size())));
        }
        Document doc;
        doc.doc_id = unescape_or_fail(fields[0], path, reader.line_number());
        if (!valid_identifier(doc.doc_id)) {
            fail(ErrorKind::parse, line_error(path, reader.line_number(), "empty or non-token doc_id"));
        }
        doc.url = unescape_or_fail(fields[1], path, reader.line_number());
        doc.text = unescape_or_fail(fields[2], path, reader.line_number());
        if (!seen.insert(doc.doc_id).second) {
            fail(ErrorKind::integrity,
                 line_error(path, reader.line_number(), "duplicate doc_id '" + doc.doc_id + "'"));
        }
        docs.push_back(std::move(doc));
    }
    return shard_documents(std::move(docs), shard_count);
}

void write_corpus(std::span<const Document> docs, const std::string& path) {
    std::unordered_set<std::string_view> seen;
    for (const auto& d : docs) {
        if (!valid_identifier(d.doc_id)) fail(ErrorKind::integrity, "invalid doc_id '" + d.doc_id + "'");
        if (!seen.insert(d.doc_id).second) fail(ErrorKind::integrity, "duplicate doc_id '" + d.doc_id + "'");
    }
    io::FileWriter out(path);
    std::string line;
    for (const auto& d : docs) {
        line.clear();
        line += io::escape_field(d.doc_id);
        line += '\t';
        line += io::escape_field(d.url);
        line += '\t';
        line += io::escape_field(d.text);
        line += '\n';
        out.write(line);
    }
    out.close();
}

std::vector<Query> read_queries(const std::string& path) {
    io::LineReader reader(path);
    std::vector<Query> queries;
    std::unordered_set<std::string> seen;
    std::string line;
    while (reader.next(line)) {
        auto fields = io::split_tabs(line);
        if (fields.size() != 2) {
            fail(ErrorKind::parse,
                 line_error(path, reader.line_number(),
                            "expected 2 tab-separated fields, found " + std::to_string(fields.size())));
        }
        Query q;
        q.query_id = unescape_or_fail(fields[0], path, reader.line_number());
        if (!valid_identifier(q.query_id)) {
            fail(ErrorKind::parse, line_error(path, reader.line_number(), "empty or non-token query_id"));
        }
        q.text = unescape_or_fail(fields[1], path, reader.line_number());
        if (!seen.insert(q.query_id).second) {
            fail(ErrorKind::integrity,
                 line_error(path, reader.line_number(), "duplicate query_id '" + q.query_id + "'"));
        }
        queries.push_back(std::move(q));
    }
    return queries;
}

void write_queries(std::span<const Query> queries, const std::string& path) {
    io::FileWriter out(path);
    for (const auto& q : queries) {
        if (!valid_identifier(q.query_id)) fail(ErrorKind::integrity, "invalid query_id '" + q.query_id + "'");
        out.write(io::escape_field(q.query_id));
        out.write("\t");
        out.write(io::escape_field(q.text));
        out.write("\n");
    }
    out.close();
}

// Synthetic corpus ----------------------------------------------------------

std::string synthetic_term(std::size_t rank) {
    static constexpr char consonants[] = "bdfghjklmnprstvwzcxq";
    static constexpr char vowels[] = "aeiou";
    std::string term;
    std::size_t n = rank;
    do {
        std::size_t digit = n % 100;
        term += consonants[digit % 20];
        term += vowels[digit / 20];
        n /= 100;
    } while (n > 0);
    return term;
}

namespace {

std::size_t host_count(std::size_t doc_count) { return 1 + doc_count / 100; }

std::size_t host_of(std::size_t index, std::size_t doc_count) { return index % host_count(doc_count); }

std::string doc_id_for(std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "doc%07zu", index);
    return buf;
}

// Renders a link to `target` as it might appear in the HTML of `source`:
// absolute, relative, or with cosmetic variations the URL normalizer undoes.
std::string href_for(std::size_t source, std::size_t target, std::size_t doc_count, Rng& rng) {
    const std::string absolute = synthetic_url(target, doc_count);
    const std::string path = "/p" + std::to_string(target) + ".html";
    const std::string host = "s" + std::to_string(host_of(target, doc_count)) + ".example.com";
    double u = rng.uniform();
    if (host_of(source, doc_count) == host_of(target, doc_count) && u < 0.3) return path;
    if (u < 0.4) return "HTTP://" + host + ":80" + path;
    if (u < 0.5) return absolute + "#section" + std::to_string(rng.below(5));
    if (u < 0.55) {
        std::string upper = host;
        for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        return "http://" + upper + path;
    }
    return absolute;
}

}  // namespace

std::string synthetic_url(std::size_t index, std::size_t doc_count) {
    return "http://s" + std::to_string(host_of(index, doc_count)) + ".example.com/p" +
           std::to_string(index) + ".html";
}

std::vector<Document> generate_synthetic(std::size_t doc_count, std::size_t vocab_size, std::uint64_t seed,
                                         const GeneratorOptions& options) {
    if (doc_count < 1) fail(ErrorKind::config, "doc_count must be at least 1");
    if (vocab_size < 2) fail(ErrorKind::config, "vocab_size must be at least 2");
    if (options.min_length < 1 || options.max_length < options.min_length * 10)
        fail(ErrorKind::config, "document lengths must span at least a factor of 10");
    if (options.link_fraction < 0.0 || options.link_fraction > 1.0)
        fail(ErrorKind::config, "link_fraction must lie in [0, 1]");

    ZipfSampler terms(vocab_size, options.zipf_exponent);
    const double log_min = std::log(static_cast<double>(options.min_length));
    const double log_max = std::log(static_cast<double>(options.max_length));

    std::vector<Document> docs;
    docs.reserve(doc_count);
    for (std::size_t i = 0; i < doc_count; ++i) {
        Rng rng(mix_seed(seed, i));
        std::size_t length;
        if (i == 0) {
            length = options.min_length;
        } else if (i == 1) {
            length = options.max_length;
        } else {
            length = static_cast<std::size_t>(std::exp(log_min + rng.uniform() * (log_max - log_min)));
            length = std::clamp(length, options.min_length, options.max_length);
        }

        std::vector<std::string> words;
        words.reserve(length + 8);
        for (std::size_t w = 0; w < length; ++w) {
            std::string word = synthetic_term(terms(rng));
            if (rng.chance(1.0 / 12)) word[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(word[0])));
            if (rng.chance(0.1)) word += rng.chance(0.5) ? "," : ".";
            words.push_back(std::move(word));
        }

        if (doc_count > 1 && rng.chance(options.link_fraction)) {
            std::size_t anchors = 1 + rng.below(4);
            for (std::size_t a = 0; a < anchors; ++a) {
                std::string href;
                double kind = rng.uniform();
                if (kind < 0.05) {
                    href = href_for(i, i, doc_count, rng);
                } else if (kind < 0.09) {
                    href = "http://elsewhere.example.org/x" + std::to_string(rng.below(1000));
                } else if (kind < 0.11) {
                    href = "mailto:someone@example.com";
                } else {
                    std::size_t target = rng.below(doc_count - 1);
                    if (target >= i) ++target;
                    href = href_for(i, target, doc_count, rng);
                }
                std::string anchor = "<a href=\"" + href + "\">";
                std::size_t anchor_words = 1 + rng.below(3);
                for (std::size_t w = 0; w < anchor_words; ++w) {
                    if (w > 0) anchor += ' ';
                    std::string word = synthetic_term(terms(rng));
                    if (rng.chance(0.2)) word = "<b>" + word + "</b>";
                    anchor += word;
                }
                anchor += "</a>";
                std::size_t pos = rng.below(words.size() + 1);
                words.insert(words.begin() + static_cast<std::ptrdiff_t>(pos), std::move(anchor));
            }
        }

        Document doc;
        doc.doc_id = doc_id_for(i);
        doc.url = synthetic_url(i, doc_count);
        for (std::size_t w = 0; w < words.size(); ++w) {
            if (w > 0) doc.text += ' ';
            doc.text += words[w];
        }
        docs.push_back(std::move(doc));
    }
    return docs;
}

std::vector<Query> generate_queries(std::size_t query_count, std::size_t vocab_size, std::uint64_t seed,
                                    const GeneratorOptions& options) {
    if (vocab_size < 2) fail(ErrorKind::config, "vocab_size must be at least 2");
    ZipfSampler terms(vocab_size, options.zipf_exponent);
    Rng rng(mix_seed(seed, 0x71756572ULL));
    std::vector<Query> queries;
    queries.reserve(query_count);
    for (std::size_t i = 0; i < query_count; ++i) {
        char id[32];
        std::snprintf(id, sizeof id, "q%05zu", i + 1);
        Query q;
        q.query_id = id;
        std::size_t n = 1 + rng.below(3);
        for (std::size_t t = 0; t < n; ++t) {
            if (t > 0) q.text += ' ';
            q.text += synthetic_term(terms(rng));
        }
        queries.push_back(std::move(q));
    }
    return queries;
}

}  // namespace mirex
