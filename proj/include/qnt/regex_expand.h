// Copyright 2026 The QNT Authors
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

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace qnt {

/// Enumerates the (finite) language of a small regular-expression subset:
/// literals, `\`-escapes, character classes `[...]` with ranges, groups,
/// alternation `|`, and bounded repetition `?`, `{m}`, `{m,n}`. Leading `^`
/// and trailing `$` are accepted and ignored.
///
/// Unbounded repetition (`*`, `+`, `{m,}`), `.`, negated classes and
/// backreferences throw RegexUnsupported. The result is sorted and
/// duplicate-free; RangeTooLarge is thrown once it would exceed `limit`.
std::vector<std::string> expand_regex(std::string_view pattern, size_t limit = 1 << 20);

/// Distinct characters the pattern can emit.
std::set<char> regex_alphabet(std::string_view pattern);

}  // namespace qnt
