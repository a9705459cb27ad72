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
#include <string>
#include <string_view>
#include <vector>

namespace mirex::text {

// Tokens are maximal runs of Unicode alphanumeric code points, lowercased.
// No stemming and no stopword list. Scan search, statistics and the inverted
// index all go through for_each_token so their vocabularies agree exactly.

bool is_alnum(char32_t cp);
char32_t to_lower(char32_t cp);

/// Decodes one code point at text[pos], advancing pos. Malformed input
/// yields U+FFFD and consumes one byte.
char32_t decode_utf8(std::string_view text, std::size_t& pos);
void append_utf8(std::string& out, char32_t cp);

namespace detail {
inline bool ascii_alnum(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || (c >= 'A' && c <= 'Z');
}
}  // namespace detail

/// Calls fn(std::string_view token) for each token in order. The view is
/// only valid for the duration of the call.
template <class Fn>
void for_each_token(std::string_view text, Fn&& fn) {
    std::string token;
    std::size_t pos = 0;
    const std::size_t n = text.size();
    while (pos < n) {
        unsigned char c = static_cast<unsigned char>(text[pos]);
        if (c < 0x80) {
            if (detail::ascii_alnum(c)) {
                token += (c >= 'A' && c <= 'Z') ? static_cast<char>(c + 32) : static_cast<char>(c);
            } else if (!token.empty()) {
                fn(std::string_view(token));
                token.clear();
            }
            ++pos;
            continue;
        }
        char32_t cp = decode_utf8(text, pos);
        if (is_alnum(cp)) {
            append_utf8(token, to_lower(cp));
        } else if (!token.empty()) {
            fn(std::string_view(token));
            token.clear();
        }
    }
    if (!token.empty()) fn(std::string_view(token));
}

std::vector<std::string> tokenize(std::string_view text);

}  // namespace mirex::text
