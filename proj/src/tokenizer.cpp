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
#include "xlrank/tokenizer.hpp"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/uscript.h>

#include "xlrank/errors.hpp"

namespace xlrank {

namespace {

bool
is_single_char_script(UChar32 c) {
    UErrorCode status = U_ZERO_ERROR;
    switch (uscript_getScript(c, &status)) {
        case USCRIPT_HAN:
        case USCRIPT_HIRAGANA:
        case USCRIPT_KATAKANA:
        case USCRIPT_HANGUL:
        case USCRIPT_THAI:
            return true;
        default:
            return false;
    }
}

icu::UnicodeString
normalize_lower(std::string_view text) {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* nfkc = icu::Normalizer2::getNFKCInstance(status);
    if (U_FAILURE(status)) {
        throw Error(std::string("ICU NFKC unavailable: ") + u_errorName(status));
    }
    icu::UnicodeString out = nfkc->normalize(
        icu::UnicodeString::fromUTF8(
            icu::StringPiece(text.data(), static_cast<int32_t>(text.size()))),
        status);
    if (U_FAILURE(status)) {
        throw Error(std::string("NFKC normalization failed: ") + u_errorName(status));
    }
    out.toLower(icu::Locale::getRoot());
    return out;
}

template <typename Emit>
void
for_each_token(std::string_view text, Emit&& emit) {
    const icu::UnicodeString norm = normalize_lower(text);
    const int32_t length = norm.length();

    int32_t run_begin = -1;
    auto flush = [&](int32_t run_end) {
        if (run_begin < 0) {
            return;
        }
        int32_t begin = run_begin;
        int32_t end = run_end;
        run_begin = -1;
        while (begin < end && u_ispunct(norm.char32At(begin))) {
            begin = norm.moveIndex32(begin, 1);
        }
        while (end > begin) {
            const int32_t prev = norm.moveIndex32(end, -1);
            if (!u_ispunct(norm.char32At(prev))) {
                break;
            }
            end = prev;
        }
        if (begin < end) {
            emit(norm, begin, end);
        }
    };

    int32_t i = 0;
    while (i < length) {
        const UChar32 c = norm.char32At(i);
        const int32_t next = norm.moveIndex32(i, 1);
        if (u_isUWhiteSpace(c)) {
            flush(i);
        } else if (is_single_char_script(c)) {
            flush(i);
            emit(norm, i, next);
        } else if (run_begin < 0) {
            run_begin = i;
        }
        i = next;
    }
    flush(length);
}

}  // namespace

TokenSequence
tokenize(std::string_view text) {
    TokenSequence tokens;
    for_each_token(text, [&](const icu::UnicodeString& s, int32_t begin, int32_t end) {
        std::string token;
        s.tempSubStringBetween(begin, end).toUTF8String(token);
        tokens.push_back(std::move(token));
    });
    return tokens;
}

std::size_t
count_tokens(std::string_view text) {
    std::size_t count = 0;
    for_each_token(text, [&](const icu::UnicodeString&, int32_t, int32_t) { ++count; });
    return count;
}

}  // namespace xlrank
