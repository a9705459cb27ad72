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

#include <optional>
#include <string>
#include <string_view>

namespace mirex {

/// Canonical form used as the anchor join key: scheme and host lowercased,
/// fragment dropped, default port removed, dot segments removed, unreserved
/// percent-escapes decoded, empty path written as "/". Relative references
/// are resolved against base (RFC 3986, section 5.2). Returns nullopt for
/// schemes other than http and https and for relatives without a base.
std::optional<std::string> normalize_url(std::string_view raw,
                                         std::optional<std::string_view> base = std::nullopt);

}  // namespace mirex
