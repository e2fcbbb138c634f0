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

namespace xlrank::detail {

/// Strips leading and trailing Unicode white space.
std::string_view
trim_whitespace(std::string_view text);

/// NFKC normalization followed by full Unicode case folding.
std::string
nfkc_casefold(std::string_view text);

}  // namespace xlrank::detail
