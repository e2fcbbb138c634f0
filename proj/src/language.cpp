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

#include "xlrank/language.hpp"

#include <unicode/uchar.h>
#include <unicode/uscript.h>
#include <unicode/utf8.h>

#include <array>
#include <cstdint>
#include <utility>

#include "xlrank/errors.hpp"

namespace xlrank {

namespace {

bool
valid_code(std::string_view code) {
    if (code == "und") {
        return true;
    }
    return code.size() == 2 && code[0] >= 'a' && code[0] <= 'z' && code[1] >= 'a' &&
           code[1] <= 'z';
}

constexpr std::array<std::pair<std::string_view, std::string_view>, 32> kNames{{
    {"ar", "Arabic"},     {"bn", "Bengali"},    {"cs", "Czech"},     {"de", "German"},
    {"el", "Greek"},      {"en", "English"},    {"es", "Spanish"},   {"fa", "Persian"},
    {"fi", "Finnish"},    {"fr", "French"},     {"he", "Hebrew"},    {"hi", "Hindi"},
    {"id", "Indonesian"}, {"it", "Italian"},    {"ja", "Japanese"},  {"km", "Khmer"},
    {"ko", "Korean"},     {"ms", "Malay"},      {"nl", "Dutch"},     {"no", "Norwegian"},
    {"pl", "Polish"},     {"pt", "Portuguese"}, {"ru", "Russian"},   {"sv", "Swedish"},
    {"sw", "Swahili"},    {"ta", "Tamil"},      {"te", "Telugu"},    {"th", "Thai"},
    {"tl", "Tagalog"},    {"tr", "Turkish"},    {"vi", "Vietnamese"}, {"zh", "Chinese"},
}};

// Order doubles as the tie-break when two buckets hold equal counts.
enum Bucket : std::size_t { kKo, kJa, kZh, kBn, kAr, kTe, kRu, kEn, kNumBuckets };

constexpr std::array<std::string_view, kNumBuckets> kBucketCodes{"ko", "ja", "zh", "bn",
                                                                 "ar", "te", "ru", "en"};

}  // namespace

LanguageCode::LanguageCode(std::string_view code) {
    if (!valid_code(code)) {
        throw ValidationError("invalid language code '" + std::string(code) + "'");
    }
    code_ = std::string(code);
}

std::optional<LanguageCode>
LanguageCode::parse(std::string_view code) noexcept {
    if (!valid_code(code)) {
        return std::nullopt;
    }
    LanguageCode out;
    out.code_ = std::string(code);
    return out;
}

std::string
english_name(const LanguageCode& lang) {
    for (const auto& [code, name] : kNames) {
        if (code == lang.str()) {
            return std::string(name);
        }
    }
    return lang.str();
}

LanguageCode
detect_language(std::string_view text) {
    if (text.empty()) {
        throw PreconditionError("detect_language: empty text");
    }
    std::array<std::size_t, kNumBuckets> counts{};
    std::size_t han = 0;
    std::size_t kana = 0;
    std::size_t non_space = 0;

    const auto* bytes = reinterpret_cast<const uint8_t*>(text.data());
    const auto length = static_cast<int32_t>(text.size());
    int32_t offset = 0;
    while (offset < length) {
        UChar32 c;
        U8_NEXT(bytes, offset, length, c);
        if (c < 0 || u_isUWhiteSpace(c)) {
            continue;
        }
        ++non_space;
        UErrorCode status = U_ZERO_ERROR;
        switch (uscript_getScript(c, &status)) {
            case USCRIPT_HANGUL:
                ++counts[kKo];
                break;
            case USCRIPT_HIRAGANA:
            case USCRIPT_KATAKANA:
                ++kana;
                break;
            case USCRIPT_HAN:
                ++han;
                break;
            case USCRIPT_BENGALI:
                ++counts[kBn];
                break;
            case USCRIPT_ARABIC:
                ++counts[kAr];
                break;
            case USCRIPT_TELUGU:
                ++counts[kTe];
                break;
            case USCRIPT_CYRILLIC:
                ++counts[kRu];
                break;
            case USCRIPT_LATIN:
                ++counts[kEn];
                break;
            default:
                break;
        }
    }
    // Han joins the Japanese bucket whenever kana is present.
    counts[kJa] = kana;
    if (kana > 0) {
        counts[kJa] += han;
    } else {
        counts[kZh] = han;
    }

    std::size_t best = 0;
    for (std::size_t b = 1; b < kNumBuckets; ++b) {
        if (counts[b] > counts[best]) {
            best = b;
        }
    }
    if (non_space == 0 || counts[best] == 0 || counts[best] * 10 < non_space * 3) {
        return LanguageCode::undetermined();
    }
    return LanguageCode(kBucketCodes[best]);
}

}  // namespace xlrank
