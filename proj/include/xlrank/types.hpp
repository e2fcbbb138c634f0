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

#include <optional>
#include <string>
#include <vector>

#include "xlrank/language.hpp"

namespace xlrank {

struct Question {
    std::string id;
    std::string text;
    LanguageCode lang;

    bool
    operator==(const Question&) const = default;
};

struct Passage {
    std::string id;
    std::string title;
    std::string text;
    LanguageCode lang;

    bool
    operator==(const Passage&) const = default;
};

/// "title text" when the title is non-empty, otherwise the text alone.
std::string
passage_with_title(const Passage& passage);

/// One retrieved passage. `rank` is the position in the current ordering
/// and `orig_rank` the position in the retriever's ordering; both are 1-based.
struct Candidate {
    Passage passage;
    std::optional<double> retriever_score;
    int orig_rank = 0;
    int rank = 0;
    bool is_positive = false;
    std::optional<double> qg_score;

    bool
    operator==(const Candidate&) const = default;
};

/// A question with its ranked candidates.
///
/// total_positives is frozen from the retriever's top-50 when the run is
/// first ingested, so recall after re-ranking keeps that denominator.
struct RetrievalRun {
    Question question;
    std::vector<Candidate> candidates;
    int total_positives = 0;
    std::vector<std::string> answers;

    bool
    operator==(const RetrievalRun&) const = default;
};

/// Number of candidates inspected when freezing total_positives.
inline constexpr int kTotalPositivesDepth = 50;

/// Where an augmented example came from.
struct Provenance {
    std::string source_id;
    LanguageCode aug_lang;

    bool
    operator==(const Provenance&) const = default;
};

struct QAExample {
    Question question;
    std::vector<std::string> answers;
    std::vector<Passage> positives;
    std::vector<Passage> negatives;
    std::optional<Provenance> provenance;

    bool
    operator==(const QAExample&) const = default;
};

}  // namespace xlrank
