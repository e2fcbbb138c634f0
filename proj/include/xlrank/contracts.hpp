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
// Scorer and Translator: the two abstract handles behind which every
// language model lives. Built-in implementations run in process; the
// service clients satisfy the same contracts over HTTP.

#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "xlrank/language.hpp"

namespace xlrank {

/// What batch drivers do when one unit of work fails.
enum class FailurePolicy {
    kFailFast,
    kSkip,
};

/// "fail_fast" or "skip"; throws ValidationError otherwise.
FailurePolicy
parse_failure_policy(std::string_view name);

/// Average natural-log likelihood of the question tokens given a passage.
struct LikelihoodScore {
    double avg_log_likelihood = 0.0;
    int num_tokens = 0;

    bool
    operator==(const LikelihoodScore&) const = default;
};

/// Everything a question-likelihood model needs for one (question, passage)
/// pair. prompt_suffix is appended after the passage by the model side;
/// target_lang_tag selects the generation language on models that take one.
struct ScorerRequest {
    std::string question_text;
    LanguageCode question_lang;
    std::string passage_text;
    LanguageCode passage_lang;
    std::optional<std::string> prompt_suffix;
    std::optional<LanguageCode> target_lang_tag;

    bool
    operator==(const ScorerRequest&) const = default;
};

/// Implementations must be safe to call from several threads at once.
class Scorer {
 public:
    virtual ~Scorer() = default;

    virtual LikelihoodScore
    score(const ScorerRequest& request) const = 0;

    /// Positionally aligned with `requests`. The default calls score() in
    /// order; a failure is rethrown nested inside ItemError(index).
    virtual std::vector<LikelihoodScore>
    score_batch(std::span<const ScorerRequest> requests) const;
};

/// Implementations must be safe to call from several threads at once.
class Translator {
 public:
    virtual ~Translator() = default;

    /// src may be "und" (translator decides); tgt never is.
    virtual std::string
    translate(std::string_view text, const LanguageCode& src, const LanguageCode& tgt) const = 0;
};

class IdentityTranslator final : public Translator {
 public:
    std::string
    translate(std::string_view text, const LanguageCode& src,
              const LanguageCode& tgt) const override;
};

/// Exact-text lookup table; texts without an entry pass through unchanged.
class MappingTranslator final : public Translator {
 public:
    explicit MappingTranslator(std::map<std::string, std::string, std::less<>> table);

    /// Reads a JSON object {"source text": "translation", ...}.
    static MappingTranslator
    from_file(const std::string& path);

    std::string
    translate(std::string_view text, const LanguageCode& src,
              const LanguageCode& tgt) const override;

 private:
    std::map<std::string, std::string, std::less<>> table_;
};

}  // namespace xlrank
