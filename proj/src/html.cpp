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

#include "html.hpp"

#include <cctype>
#include <optional>

#include "text.hpp"

namespace mirex::html {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

char lower(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }

bool iequals(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (lower(a[i]) != lower(b[i])) return false;
    }
    return true;
}

std::size_t ifind(std::string_view hay, std::string_view needle, std::size_t from) {
    if (needle.size() > hay.size()) return std::string_view::npos;
    for (std::size_t i = from; i + needle.size() <= hay.size(); ++i) {
        if (iequals(hay.substr(i, needle.size()), needle)) return i;
    }
    return std::string_view::npos;
}

struct Tag {
    std::string name;  // lowercased
    bool closing = false;
    std::optional<std::string> href;
    std::size_t end = 0;  // one past '>'
};

// Parses the tag starting at html[pos] == '<'. Returns nullopt when the bytes
// do not form a tag; the '<' is then ordinary text.
std::optional<Tag> parse_tag(std::string_view html, std::size_t pos) {
    Tag tag;
    std::size_t i = pos + 1;
    if (i < html.size() && html[i] == '/') {
        tag.closing = true;
        ++i;
    }
    std::size_t name_start = i;
    while (i < html.size() && std::isalnum(static_cast<unsigned char>(html[i]))) ++i;
    if (i == name_start || !std::isalpha(static_cast<unsigned char>(html[name_start]))) return std::nullopt;
    for (std::size_t k = name_start; k < i; ++k) tag.name += lower(html[k]);
    if (i < html.size() && !is_space(html[i]) && html[i] != '>' && html[i] != '/') return std::nullopt;

    // Attributes.
    while (i < html.size()) {
        while (i < html.size() && (is_space(html[i]) || html[i] == '/')) ++i;
        if (i >= html.size()) break;
        if (html[i] == '>') {
            tag.end = i + 1;
            return tag;
        }
        std::size_t attr_start = i;
        while (i < html.size() && !is_space(html[i]) && html[i] != '=' && html[i] != '>' && html[i] != '/') ++i;
        std::string_view attr = html.substr(attr_start, i - attr_start);
        while (i < html.size() && is_space(html[i])) ++i;
        std::optional<std::string_view> value;
        if (i < html.size() && html[i] == '=') {
            ++i;
            while (i < html.size() && is_space(html[i])) ++i;
            if (i < html.size() && (html[i] == '"' || html[i] == '\'')) {
                char quote = html[i++];
                std::size_t close = html.find(quote, i);
                if (close == std::string_view::npos) return std::nullopt;
                value = html.substr(i, close - i);
                i = close + 1;
            } else {
                std::size_t v = i;
                while (i < html.size() && !is_space(html[i]) && html[i] != '>') ++i;
                value = html.substr(v, i - v);
            }
        } else if (attr.empty()) {
            ++i;  // stray character such as a lone quote
        }
        if (value && !tag.href && iequals(attr, "href")) {
            std::string decoded = collapse_whitespace(decode_entities(*value));
            tag.href = std::move(decoded);
        }
    }
    return std::nullopt;
}

// Shared single pass over the markup. on_text receives visible text runs,
// on_tag every parsed tag; both see input strictly in document order.
template <class OnText, class OnTag>
void walk(std::string_view html, OnText&& on_text, OnTag&& on_tag) {
    std::size_t i = 0;
    std::size_t text_start = 0;
    auto flush = [&](std::size_t upto) {
        if (upto > text_start) on_text(html.substr(text_start, upto - text_start));
    };
    while (i < html.size()) {
        if (html[i] != '<') {
            ++i;
            continue;
        }
        if (html.substr(i, 4) == "<!--") {
            flush(i);
            std::size_t close = html.find("-->", i + 4);
            i = close == std::string_view::npos ? html.size() : close + 3;
            text_start = i;
            continue;
        }
        if (i + 1 < html.size() && (html[i + 1] == '!' || html[i + 1] == '?')) {
            flush(i);
            std::size_t close = html.find('>', i);
            i = close == std::string_view::npos ? html.size() : close + 1;
            text_start = i;
            continue;
        }
        auto tag = parse_tag(html, i);
        if (!tag) {
            ++i;
            continue;
        }
        flush(i);
        on_tag(*tag);
        i = tag->end;
        if (!tag->closing && (tag->name == "script" || tag->name == "style")) {
            std::size_t close = ifind(html, "</" + tag->name, i);
            if (close == std::string_view::npos) {
                i = html.size();
            } else {
                std::size_t gt = html.find('>', close);
                i = gt == std::string_view::npos ? html.size() : gt + 1;
            }
        }
        text_start = i;
    }
    flush(html.size());
}

}  // namespace

std::string decode_entities(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] != '&') {
            out += s[i++];
            continue;
        }
        std::size_t semi = s.find(';', i + 1);
        if (semi == std::string_view::npos || semi - i > 10) {
            out += s[i++];
            continue;
        }
        std::string_view name = s.substr(i + 1, semi - i - 1);
        std::optional<char32_t> cp;
        if (name == "amp") cp = U'&';
        else if (name == "lt") cp = U'<';
        else if (name == "gt") cp = U'>';
        else if (name == "quot") cp = U'"';
        else if (name == "apos") cp = U'\'';
        else if (name == "nbsp") cp = U' ';
        else if (name.size() > 1 && name[0] == '#') {
            bool hex = name[1] == 'x' || name[1] == 'X';
            std::string_view digits = name.substr(hex ? 2 : 1);
            char32_t value = 0;
            bool ok = !digits.empty();
            for (char c : digits) {
                int d;
                if (c >= '0' && c <= '9') d = c - '0';
                else if (hex && c >= 'a' && c <= 'f') d = c - 'a' + 10;
                else if (hex && c >= 'A' && c <= 'F') d = c - 'A' + 10;
                else { ok = false; break; }
                value = value * (hex ? 16 : 10) + static_cast<char32_t>(d);
                if (value > 0x10FFFF) { ok = false; break; }
            }
            if (ok && value != 0 && !(value >= 0xD800 && value <= 0xDFFF)) cp = value;
        }
        if (!cp) {
            out += s[i++];
            continue;
        }
        text::append_utf8(out, *cp);
        i = semi + 1;
    }
    return out;
}

std::string collapse_whitespace(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool pending_space = false;
    for (char c : s) {
        if (is_space(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) out += ' ';
        pending_space = false;
        out += c;
    }
    return out;
}

std::string strip_tags(std::string_view html) {
    std::string out;
    out.reserve(html.size());
    walk(
        html, [&](std::string_view run) { out += decode_entities(run); },
        [&](const Tag&) { out += ' '; });
    return out;
}

std::vector<RawAnchor> scan_anchors(std::string_view html) {
    std::vector<RawAnchor> anchors;
    bool open = false;
    std::string href;
    std::string buffer;
    auto close = [&] {
        if (open) anchors.push_back(RawAnchor{href, collapse_whitespace(decode_entities(buffer))});
        open = false;
        buffer.clear();
    };
    walk(
        html,
        [&](std::string_view run) {
            if (open) buffer += run;
        },
        [&](const Tag& tag) {
            if (tag.name == "a") {
                close();
                if (!tag.closing && tag.href) {
                    open = true;
                    href = *tag.href;
                }
            } else if (open) {
                buffer += ' ';
            }
        });
    close();
    return anchors;
}

}  // namespace mirex::html
