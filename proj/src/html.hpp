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

#include <string>
#include <string_view>
#include <vector>

// Streaming tag scanner. No tree is built: the input is read once, tags are
// recognised by name, and anything unparseable is passed over. Comments and
// the bodies of script and style elements never contribute text.

namespace mirex::html {

/// A hyperlink as written in the page: raw href and its visible text with
/// nested markup removed and whitespace collapsed.
struct RawAnchor {
    std::string href;
    std::string text;

    friend bool operator==(const RawAnchor&, const RawAnchor&) = default;
};

/// Anchors in document order. An anchor without a closing tag ends at the
/// next anchor start or at end of input. Anchors without href are ignored.
std::vector<RawAnchor> scan_anchors(std::string_view html);

/// Visible text: tags become single spaces, entities are decoded.
std::string strip_tags(std::string_view html);

/// Decodes the common named entities and numeric character references.
std::string decode_entities(std::string_view s);

/// Collapses whitespace runs to one space and trims both ends.
std::string collapse_whitespace(std::string_view s);

}  // namespace mirex::html
