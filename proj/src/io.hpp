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

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mirex::io {

/// Escapes tab, newline and backslash so a field fits on one TSV line.
std::string escape_field(std::string_view raw);

/// Inverse of escape_field. Returns nullopt on a dangling or unknown escape.
std::optional<std::string> unescape_field(std::string_view escaped);

/// Splits on '\t' without unescaping.
std::vector<std::string_view> split_tabs(std::string_view line);

/// Splits on runs of ASCII whitespace.
std::vector<std::string_view> split_ws(std::string_view line);

bool has_gzip_suffix(const std::string& path);

/// Line-oriented reader; transparently gunzips when the path ends in ".gz".
class LineReader {
  public:
    explicit LineReader(const std::string& path);
    ~LineReader();
    LineReader(const LineReader&) = delete;
    LineReader& operator=(const LineReader&) = delete;

    /// Reads the next line without its terminating '\n'. Returns false at EOF.
    bool next(std::string& line);

    /// 1-based number of the line most recently returned by next().
    std::size_t line_number() const noexcept { return line_no_; }

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    std::size_t line_no_ = 0;
};

/// Buffered writer; gzips when the path ends in ".gz". close() flushes and
/// reports write errors, the destructor swallows them.
class FileWriter {
  public:
    explicit FileWriter(const std::string& path);
    ~FileWriter();
    FileWriter(const FileWriter&) = delete;
    FileWriter& operator=(const FileWriter&) = delete;

    void write(std::string_view data);
    void close();

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    std::string path_;
};

/// Whole-file helpers for small text artifacts (run files, CSV, metadata).
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view contents);

}  // namespace mirex::io
