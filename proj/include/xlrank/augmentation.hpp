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
// Translation-based QA data augmentation.
//
// English examples are translated field by field into each target
// language, and a translated example is kept only when one of its
// translated answers still occurs verbatim in a translated positive
// paragraph.

#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "xlrank/contracts.hpp"
#include "xlrank/errors.hpp"
#include "xlrank/types.hpp"

namespace xlrank {

enum class ContainmentMode {
    /// Raw substring match, no normalization.
    kExact,
    /// Both sides NFKC-normalized and case-folded first.
    kNfkcCasefold,
};

ContainmentMode
parse_containment_mode(std::string_view name);

struct AugmentationConfig {
    std::vector<LanguageCode> target_langs;
    std::size_t n_examples = 5000;
    std::size_t n_pos_paragraphs = 3;
    std::size_t n_neg_paragraphs = 3;
    std::size_t max_input_tokens = 600;
    ContainmentMode containment = ContainmentMode::kExact;

    /// Throws ValidationError on zero counts, no target language or "und".
    void
    validate() const;
};

/// Translates the question, every answer, and the first n_pos / n_neg
/// paragraphs (title and text) into `tgt`. Ids get the suffix "#<tgt>".
/// Any translation failure fails the whole example. Throws
/// PreconditionError unless the example is English.
QAExample
translate_example(const QAExample& example, const LanguageCode& tgt, const Translator& translator,
                  const AugmentationConfig& config);

/// True iff some answer occurs in the text of some positive paragraph.
bool
filter_contains_answer(const QAExample& example, ContainmentMode mode = ContainmentMode::kExact);

inline constexpr std::string_view kPassageSeparator = " [SEP] ";

struct ReaderRecord {
    std::string question_text;
    std::string context;
    std::vector<std::string> answers;
    LanguageCode lang;
    /// Whole passages in the context; 0 means the first passage was cut.
    std::size_t passages_used = 0;
};

/// Reader input is laid out as question, kPassageSeparator, context.
/// The context concatenates "title text" blocks, joined by
/// kPassageSeparator, in the given order while the tokens of all three
/// parts stay within max_input_tokens. If even the first passage does not fit, a
/// prefix of it ending on a token boundary is used. Throws
/// PreconditionError on an empty passage list.
ReaderRecord
build_reader_input(const Question& question, std::span<const Passage> passages,
                   std::span<const std::string> answers, std::size_t max_input_tokens);

/// Longest prefix of `text` ending on a token boundary whose
/// count_tokens is at most max_tokens.
std::string
truncate_to_tokens(std::string_view text, std::size_t max_tokens);

struct LanguageSummary {
    std::size_t kept = 0;
    std::size_t dropped = 0;
    std::size_t errored = 0;
};

struct AugmentFailure {
    std::string example_id;
    LanguageCode lang;
    std::string message;
    ErrorKind kind = ErrorKind::kOther;
};

struct AugmentResult {
    /// Grouped by target language (config order), source order within.
    std::vector<QAExample> kept;
    std::size_t dropped = 0;
    std::size_t errored = 0;
    std::size_t n_source = 0;
    std::map<LanguageCode, LanguageSummary> per_language;
    std::vector<AugmentFailure> failures;
};

/// Takes the first n_examples of `source`; for every target language
/// translates each one and keeps those passing filter_contains_answer.
/// Kept examples carry provenance. Translation failures abort under
/// kFailFast and are counted as errored under kSkip.
AugmentResult
augment_corpus(std::span<const QAExample> source, const AugmentationConfig& config,
               const Translator& translator, FailurePolicy policy = FailurePolicy::kSkip,
               std::size_t workers = 1);

/// JSON summary: totals plus kept/dropped/errored per language.
std::string
serialize_augment_summary(const AugmentResult& result);

std::string
serialize_reader_record(const ReaderRecord& record);

}  // namespace xlrank
