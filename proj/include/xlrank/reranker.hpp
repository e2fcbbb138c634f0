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
// Question-generation re-ranking of retrieved candidates.
//
// Candidates are re-ordered by the likelihood a Scorer assigns to the
// question given each passage. The retriever's score is never read, and
// its rank only breaks exact ties.

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "xlrank/contracts.hpp"
#include "xlrank/errors.hpp"
#include "xlrank/types.hpp"

namespace xlrank {

enum class ExperimentMode {
    /// Question as is; the passage is followed by a "generate a question in
    /// <language>" instruction.
    kDirectPrompt,
    /// Passage translated into the question language, then as kDirectPrompt.
    kPassageTranslated,
    /// Question translated into the (detected) passage language, then as
    /// kDirectPrompt with the instruction naming that language.
    kQuestionTranslated,
    /// Question as is; the target language is passed as a tag, no instruction.
    kLanguageTagged,
};

std::string_view
to_string(ExperimentMode mode);

/// Accepts direct_prompt | passage_translated | question_translated |
/// language_tagged. Throws ValidationError otherwise.
ExperimentMode
parse_experiment_mode(std::string_view name);

/// "Please generate a question in <English name> for this passage"
std::string
question_prompt(const LanguageCode& lang);

inline constexpr std::size_t kDefaultRerankDepth = 50;

/// Builds the scorer input for one (question, passage) pair. The passage
/// is presented as "title text". `translator` may be null for modes that
/// do not translate. Throws PreconditionError when a needed translator is
/// missing or the passage language cannot be detected.
ScorerRequest
build_request(const Question& question, const Passage& passage, ExperimentMode mode,
              const Translator* translator);

/// Scores the first min(k, n) candidates and sorts them by score
/// descending, ties by ascending orig_rank. Output candidates carry their
/// new rank, their original orig_rank and qg_score; total_positives is kept.
/// Any failure aborts the whole run with a nested Error naming the
/// question and, when known, the candidate.
RetrievalRun
rerank(const RetrievalRun& run, const Scorer& scorer, ExperimentMode mode,
       const Translator* translator, std::size_t k = kDefaultRerankDepth);

struct RunFailure {
    std::string question_id;
    std::string message;
    ErrorKind kind = ErrorKind::kOther;
};

struct CorpusRerankOptions {
    std::size_t k = kDefaultRerankDepth;
    FailurePolicy policy = FailurePolicy::kFailFast;
    std::size_t workers = 1;
};

struct CorpusRerankResult {
    /// Successful runs, in input order.
    std::vector<RetrievalRun> runs;
    std::vector<RunFailure> failures;
};

/// rerank over many runs, up to options.workers at a time. Under
/// kFailFast the failure of the earliest run (in input order) is rethrown;
/// under kSkip failures are collected and the other runs are returned.
CorpusRerankResult
rerank_corpus(std::span<const RetrievalRun> runs, const Scorer& scorer, ExperimentMode mode,
              const Translator* translator, const CorpusRerankOptions& options = {});

/// One rerank-report record: question id, input order, output order and
/// the qg_score of each output candidate.
std::string
serialize_rerank_report(const RetrievalRun& before, const RetrievalRun& after);

}  // namespace xlrank
