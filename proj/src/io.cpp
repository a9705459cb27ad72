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

#include "io.hpp"

#include <zlib.h>

#include <cstdio>
#include <cstring>

#include "error.hpp"

namespace mirex::io {

std::string escape_field(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    for (char c : raw) {
        switch (c) {
            case '\t': out += "\\t"; break;
            case '\n': out += "\\n"; break;
            case '\\': out += "\\\\"; break;
            default: out += c;
        }
    }
    return out;
}

std::optional<std::string> unescape_field(std::string_view escaped) {
    std::string out;
    out.reserve(escaped.size());
    for (std::size_t i = 0; i < escaped.size(); ++i) {
        char c = escaped[i];
        if (c != '\\') {
            out += c;
            continue;
        }
        if (++i == escaped.size()) return std::nullopt;
        switch (escaped[i]) {
            case 't': out += '\t'; break;
            case 'n': out += '\n'; break;
            case '\\': out += '\\'; break;
            default: return std::nullopt;
        }
    }
    return out;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t tab = line.find('\t', start);
        if (tab == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t i = 0;
    auto is_space = [](char c) {
        return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v';
    };
    while (i < line.size()) {
        while (i < line.size() && is_space(line[i])) ++i;
        std::size_t start = i;
        while (i < line.size() && !is_space(line[i])) ++i;
        if (i > start) fields.push_back(line.substr(start, i - start));
    }
    return fields;
}

bool has_gzip_suffix(const std::string& path) {
    return path.size() >= 3 && path.compare(path.size() - 3, 3, ".gz") == 0;
}

// gzread handles uncompressed input transparently, so one code path serves
// both plain and compressed files.
struct LineReader::Impl {
    gzFile file = nullptr;
    std::vector<char> buffer = std::vector<char>(1 << 16);
    std::size_t begin = 0;
    std::size_t end = 0;
    bool eof = false;

    bool fill() {
        if (eof) return false;
        int n = gzread(file, buffer.data(), static_cast<unsigned>(buffer.size()));
        if (n < 0) {
            int errnum = 0;
            const char* msg = gzerror(file, &errnum);
            fail(ErrorKind::io, std::string("read failed: ") + (msg ? msg : "unknown"));
        }
        begin = 0;
        end = static_cast<std::size_t>(n);
        if (n == 0) eof = true;
        return n > 0;
    }
};

LineReader::LineReader(const std::string& path) : impl_(std::make_unique<Impl>()) {
    impl_->file = gzopen(path.c_str(), "rb");
    if (impl_->file == nullptr) fail(ErrorKind::io, "cannot open '" + path + "' for reading");
    gzbuffer(impl_->file, 1 << 17);
}

LineReader::~LineReader() {
    if (impl_ && impl_->file) gzclose(impl_->file);
}

bool LineReader::next(std::string& line) {
    line.clear();
    bool any = false;
    while (true) {
        if (impl_->begin == impl_->end && !impl_->fill()) {
            if (any) ++line_no_;
            return any;
        }
        const char* start = impl_->buffer.data() + impl_->begin;
        std::size_t avail = impl_->end - impl_->begin;
        const void* nl = std::memchr(start, '\n', avail);
        if (nl != nullptr) {
            std::size_t len = static_cast<const char*>(nl) - start;
            line.append(start, len);
            impl_->begin += len + 1;
            ++line_no_;
            return true;
        }
        line.append(start, avail);
        impl_->begin = impl_->end;
        any = true;
    }
}

struct FileWriter::Impl {
    gzFile gz = nullptr;
    std::FILE* plain = nullptr;
};

FileWriter::FileWriter(const std::string& path) : impl_(std::make_unique<Impl>()), path_(path) {
    if (has_gzip_suffix(path)) {
        impl_->gz = gzopen(path.c_str(), "wb6");
        if (impl_->gz == nullptr) fail(ErrorKind::io, "cannot open '" + path + "' for writing");
    } else {
        impl_->plain = std::fopen(path.c_str(), "wb");
        if (impl_->plain == nullptr) fail(ErrorKind::io, "cannot open '" + path + "' for writing");
    }
}

FileWriter::~FileWriter() {
    if (!impl_) return;
    if (impl_->gz) gzclose(impl_->gz);
    if (impl_->plain) std::fclose(impl_->plain);
}

void FileWriter::write(std::string_view data) {
    if (data.empty()) return;
    if (impl_->gz) {
        int n = gzwrite(impl_->gz, data.data(), static_cast<unsigned>(data.size()));
        if (n <= 0) fail(ErrorKind::io, "write to '" + path_ + "' failed");
    } else if (impl_->plain) {
        if (std::fwrite(data.data(), 1, data.size(), impl_->plain) != data.size())
            fail(ErrorKind::io, "write to '" + path_ + "' failed");
    } else {
        fail(ErrorKind::io, "write to closed file '" + path_ + "'");
    }
}

void FileWriter::close() {
    bool ok = true;
    if (impl_->gz) {
        ok = gzclose(impl_->gz) == Z_OK;
        impl_->gz = nullptr;
    }
    if (impl_->plain) {
        ok = std::fclose(impl_->plain) == 0;
        impl_->plain = nullptr;
    }
    if (!ok) fail(ErrorKind::io, "closing '" + path_ + "' failed");
}

std::string read_text_file(const std::string& path) {
    gzFile file = gzopen(path.c_str(), "rb");
    if (file == nullptr) fail(ErrorKind::io, "cannot open '" + path + "' for reading");
    std::string out;
    char chunk[1 << 15];
    int n = 0;
    while ((n = gzread(file, chunk, sizeof chunk)) > 0) out.append(chunk, static_cast<std::size_t>(n));
    gzclose(file);
    if (n < 0) fail(ErrorKind::io, "read of '" + path + "' failed");
    return out;
}

void write_text_file(const std::string& path, std::string_view contents) {
    FileWriter writer(path);
    writer.write(contents);
    writer.close();
}

}  // namespace mirex::io
