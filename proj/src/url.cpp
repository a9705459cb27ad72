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

#include "url.hpp"

#include <cctype>

namespace mirex {

namespace {

struct UrlParts {
    std::optional<std::string> scheme;
    std::optional<std::string> authority;
    std::string path;
    std::optional<std::string> query;
};

bool is_scheme_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.';
}

UrlParts split(std::string_view s) {
    UrlParts parts;
    if (auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);

    std::size_t colon = s.find(':');
    if (colon != std::string_view::npos && colon > 0 && std::isalpha(static_cast<unsigned char>(s[0]))) {
        bool ok = true;
        for (std::size_t i = 0; i < colon; ++i) ok = ok && is_scheme_char(s[i]);
        // A colon after the first '/' or '?' belongs to the path or query.
        std::size_t stop = s.find_first_of("/?");
        if (ok && (stop == std::string_view::npos || colon < stop)) {
            std::string scheme(s.substr(0, colon));
            for (char& c : scheme) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            parts.scheme = std::move(scheme);
            s = s.substr(colon + 1);
        }
    }
    if (s.substr(0, 2) == "//") {
        s = s.substr(2);
        std::size_t end = s.find_first_of("/?");
        parts.authority = std::string(s.substr(0, end));
        s = end == std::string_view::npos ? std::string_view{} : s.substr(end);
    }
    if (auto q = s.find('?'); q != std::string_view::npos) {
        parts.query = std::string(s.substr(q + 1));
        s = s.substr(0, q);
    }
    parts.path = std::string(s);
    return parts;
}

std::string remove_dot_segments(std::string_view input) {
    std::string in(input);
    std::string out;
    while (!in.empty()) {
        if (in.rfind("../", 0) == 0) {
            in.erase(0, 3);
        } else if (in.rfind("./", 0) == 0) {
            in.erase(0, 2);
        } else if (in.rfind("/./", 0) == 0) {
            in.replace(0, 3, "/");
        } else if (in == "/.") {
            in = "/";
        } else if (in.rfind("/../", 0) == 0 || in == "/..") {
            if (in == "/..") {
                in = "/";
            } else {
                in.replace(0, 4, "/");
            }
            auto slash = out.rfind('/');
            out.erase(slash == std::string::npos ? 0 : slash);
        } else if (in == "." || in == "..") {
            in.clear();
        } else {
            std::size_t next = in.find('/', in[0] == '/' ? 1 : 0);
            out += in.substr(0, next);
            in.erase(0, next == std::string::npos ? in.size() : next);
        }
    }
    return out;
}

std::string merge_paths(const UrlParts& base, std::string_view ref_path) {
    if (base.authority && base.path.empty()) return "/" + std::string(ref_path);
    auto slash = base.path.rfind('/');
    if (slash == std::string::npos) return std::string(ref_path);
    return base.path.substr(0, slash + 1) + std::string(ref_path);
}

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

bool is_unreserved(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.' || c == '_' || c == '~';
}

// Decodes %XX escapes of unreserved characters; other escapes are kept with
// uppercase hex digits.
std::string normalize_escapes(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '%' && i + 2 < s.size()) {
            int hi = hex_value(s[i + 1]);
            int lo = hex_value(s[i + 2]);
            if (hi >= 0 && lo >= 0) {
                char c = static_cast<char>(hi * 16 + lo);
                if (is_unreserved(c)) {
                    out += c;
                } else {
                    out += '%';
                    out += static_cast<char>(std::toupper(static_cast<unsigned char>(s[i + 1])));
                    out += static_cast<char>(std::toupper(static_cast<unsigned char>(s[i + 2])));
                }
                i += 2;
                continue;
            }
        }
        out += s[i];
    }
    return out;
}

std::string_view trim(std::string_view s) {
    auto space = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f'; };
    while (!s.empty() && space(s.front())) s.remove_prefix(1);
    while (!s.empty() && space(s.back())) s.remove_suffix(1);
    return s;
}

std::optional<std::string> normalize_authority(std::string_view authority, const std::string& scheme) {
    std::string userinfo;
    if (auto at = authority.rfind('@'); at != std::string_view::npos) {
        userinfo = std::string(authority.substr(0, at + 1));
        authority = authority.substr(at + 1);
    }
    std::string host;
    std::string port;
    if (!authority.empty() && authority[0] == '[') {
        auto close = authority.find(']');
        if (close == std::string_view::npos) return std::nullopt;
        host = std::string(authority.substr(0, close + 1));
        std::string_view rest = authority.substr(close + 1);
        if (!rest.empty()) {
            if (rest[0] != ':') return std::nullopt;
            port = std::string(rest.substr(1));
        }
    } else {
        auto colon = authority.rfind(':');
        host = std::string(authority.substr(0, colon));
        if (colon != std::string_view::npos) port = std::string(authority.substr(colon + 1));
    }
    for (char c : port) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    }
    if (host.empty()) return std::nullopt;
    for (char& c : host) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    while (port.size() > 1 && port[0] == '0') port.erase(0, 1);
    if ((scheme == "http" && port == "80") || (scheme == "https" && port == "443")) port.clear();
    return userinfo + host + (port.empty() ? "" : ":" + port);
}

}  // namespace

std::optional<std::string> normalize_url(std::string_view raw, std::optional<std::string_view> base) {
    UrlParts ref = split(trim(raw));
    UrlParts target;
    if (ref.scheme) {
        target = ref;
        target.path = remove_dot_segments(ref.path);
    } else {
        if (!base) return std::nullopt;
        UrlParts b = split(trim(*base));
        if (!b.scheme || !b.authority) return std::nullopt;
        target.scheme = b.scheme;
        if (ref.authority) {
            target.authority = ref.authority;
            target.path = remove_dot_segments(ref.path);
            target.query = ref.query;
        } else {
            target.authority = b.authority;
            if (ref.path.empty()) {
                target.path = b.path;
                target.query = ref.query ? ref.query : b.query;
            } else {
                target.path = remove_dot_segments(ref.path[0] == '/' ? ref.path : merge_paths(b, ref.path));
                target.query = ref.query;
            }
        }
    }
    const std::string& scheme = *target.scheme;
    if (scheme != "http" && scheme != "https") return std::nullopt;
    if (!target.authority) return std::nullopt;
    auto authority = normalize_authority(*target.authority, scheme);
    if (!authority) return std::nullopt;

    std::string path = normalize_escapes(target.path);
    if (path.empty()) path = "/";
    std::string out = scheme + "://" + *authority + path;
    if (target.query) out += "?" + normalize_escapes(*target.query);
    return out;
}

}  // namespace mirex
