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

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace xlrank {

/// Two lowercase ASCII letters ("ko", "bn", "en"), or "und" when unknown.
class LanguageCode {
 public:
    LanguageCode() = default;

    /// Throws ValidationError unless `code` is two lowercase letters or "und".
    explicit LanguageCode(std::string_view code);

    static std::optional<LanguageCode>
    parse(std::string_view code) noexcept;

    static LanguageCode
    undetermined() {
        return LanguageCode{};
    }

    const std::string&
    str() const noexcept {
        return code_;
    }

    bool
    is_undetermined() const noexcept {
        return code_ == "und";
    }

    auto
    operator<=>(const LanguageCode&) const = default;

 private:
    std::string code_ = "und";
};

/// English display name ("ko" -> "Korean"). Codes without a known name
/// render as the code itself.
std::string
english_name(const LanguageCode& lang);

/// Script-bucket language identification. Each non-space character votes
/// for at most one bucket; the plurality bucket wins if it holds at least
/// 30% of the non-space characters, otherwise the result is "und".
/// Latin script always resolves to "en". Throws PreconditionError on
/// empty text.
LanguageCode
detect_language(std::string_view text);

}  // namespace xlrank
