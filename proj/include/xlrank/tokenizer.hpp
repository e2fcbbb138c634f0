// Copyright 2026-present the xlrank project
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

namespace xlrank {

using TokenSequence = std::vector<std::string>;

/// Reference tokenization shared by scoring, F1 and token budgets.
///
/// NFKC-normalizes and lowercases, then emits every Han, Hiragana,
/// Katakana, Hangul or Thai character as its own token and splits the
/// remaining runs on Unicode white space. Punctuation is stripped from
/// token edges; tokens that become empty are dropped.
TokenSequence
tokenize(std::string_view text);

/// tokenize(text).size() without keeping the tokens.
std::size_t
count_tokens(std::string_view text);

}  // namespace xlrank
