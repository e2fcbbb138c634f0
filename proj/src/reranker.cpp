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
#include "xlrank/reranker.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <optional>

#include "json_util.hpp"
#include "parallel.hpp"

namespace xlrank {

std::string_view
to_string(ExperimentMode mode) {
    switch (mode) {
        case ExperimentMode::kDirectPrompt:
            return "direct_prompt";
        case ExperimentMode::kPassageTranslated:
            return "passage_translated";
        case ExperimentMode::kQuestionTranslated:
            return "question_translated";
        case ExperimentMode::kLanguageTagged:
            return "language_tagged";
    }
    return "unknown";
}

ExperimentMode
parse_experiment_mode(std::string_view name) {
    for (auto mode : {ExperimentMode::kDirectPrompt, ExperimentMode::kPassageTranslated,
                      ExperimentMode::kQuestionTranslated, ExperimentMode::kLanguageTagged}) {
        if (to_string(mode) == name) {
            return mode;
        }
    }
    throw ValidationError("unknown experiment mode '" + std::string(name) + "'");
}

std::string
question_prompt(const LanguageCode& lang) {
    return "Please generate a question in " + english_name(lang) + " for this passage";
}

ScorerRequest
build_request(const Question& question, const Passage& passage, ExperimentMode mode,
              const Translator* translator) {
    if (question.text.empty() || passage.text.empty()) {
        throw PreconditionError("question and passage text must be non-empty");
    }
    ScorerRequest request;
    request.question_text = question.text;
    request.question_lang = question.lang;
    request.passage_text = passage_with_title(passage);
    request.passage_lang = passage.lang;

    auto need_translator = [&] {
        if (translator == nullptr) {
            throw PreconditionError("mode " + std::string(to_string(mode)) +
                                    " requires a translator");
        }
    };

    switch (mode) {
        case ExperimentMode::kDirectPrompt:
            request.prompt_suffix = question_prompt(question.lang);
            break;
        case ExperimentMode::kPassageTranslated:
            need_translator();
            request.passage_text =
                translator->translate(request.passage_text, passage.lang, question.lang);
            request.passage_lang = question.lang;
            request.prompt_suffix = question_prompt(question.lang);
            break;
        case ExperimentMode::kQuestionTranslated: {
            need_translator();
            const LanguageCode target =
                passage.lang.is_undetermined() ? detect_language(passage.text) : passage.lang;
            if (target.is_undetermined()) {
                throw PreconditionError("undetectable passage language");
            }
            request.passage_lang = target;
            request.question_text = translator->translate(question.text, question.lang, target);
            request.question_lang = target;
            request.prompt_suffix = question_prompt(target);
            break;
        }
        case ExperimentMode::kLanguageTagged:
            request.target_lang_tag = question.lang;
            break;
    }
    return request;
}

RetrievalRun
rerank(const RetrievalRun& run, const Scorer& scorer, ExperimentMode mode,
       const Translator* translator, std::size_t k) {
    try {
        if (run.candidates.empty()) {
            throw PreconditionError("run has no candidates");
        }
        if (k == 0) {
            throw PreconditionError("rerank depth k must be at least 1");
        }
        const std::size_t n = std::min(k, run.candidates.size());

        std::vector<ScorerRequest> requests;
        requests.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            const Passage& passage = run.candidates[i].passage;
            try {
                requests.push_back(build_request(run.question, passage, mode, translator));
            } catch (const std::exception&) {
                std::throw_with_nested(Error("candidate '" + passage.id + "'"));
            }
        }

        std::vector<LikelihoodScore> scores;
        try {
            scores = scorer.score_batch(requests);
        } catch (const std::exception& e) {
            std::size_t index = 0;
            if (find_item_index(e, index) && index < n) {
                std::throw_with_nested(
                    Error("candidate '" + run.candidates[index].passage.id + "'"));
            }
            throw;
        }
        if (scores.size() != n) {
            throw ProtocolError("scorer returned " + std::to_string(scores.size()) +
                                " scores for " + std::to_string(n) + " candidates");
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (!std::isfinite(scores[i].avg_log_likelihood)) {
                throw ProtocolError("candidate '" + run.candidates[i].passage.id +
                                    "': non-finite score");
            }
        }

        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            const double sa = scores[a].avg_log_likelihood;
            const double sb = scores[b].avg_log_likelihood;
            if (sa != sb) {
                return sa > sb;
            }
            return run.candidates[a].orig_rank < run.candidates[b].orig_rank;
        });

        RetrievalRun out;
        out.question = run.question;
        out.answers = run.answers;
        out.total_positives = run.total_positives;
        out.candidates.reserve(n);
        for (std::size_t pos = 0; pos < n; ++pos) {
            Candidate cand = run.candidates[order[pos]];
            cand.rank = static_cast<int>(pos) + 1;
            cand.qg_score = scores[order[pos]].avg_log_likelihood;
            out.candidates.push_back(std::move(cand));
        }
        return out;
    } catch (const std::exception&) {
        std::throw_with_nested(Error("run '" + run.question.id + "'"));
    }
}

CorpusRerankResult
rerank_corpus(std::span<const RetrievalRun> runs, const Scorer& scorer, ExperimentMode mode,
              const Translator* translator, const CorpusRerankOptions& options) {
    std::vector<std::optional<RetrievalRun>> results(runs.size());
    std::vector<std::exception_ptr> errors(runs.size());
    detail::parallel_for(runs.size(), options.workers, [&](std::size_t i) {
        try {
            results[i] = rerank(runs[i], scorer, mode, translator, options.k);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    });

    CorpusRerankResult out;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        if (!errors[i]) {
            out.runs.push_back(std::move(*results[i]));
            continue;
        }
        if (options.policy == FailurePolicy::kFailFast) {
            std::rethrow_exception(errors[i]);
        }
        try {
            std::rethrow_exception(errors[i]);
        } catch (const std::exception& e) {
            out.failures.push_back({runs[i].question.id, describe(e), classify(e)});
        }
    }
    return out;
}

std::string
serialize_rerank_report(const RetrievalRun& before, const RetrievalRun& after) {
    detail::ordered_json record;
    record["q_id"] = after.question.id;
    auto& old_order = record["old_order"] = detail::ordered_json::array();
    for (const auto& cand : before.candidates) {
        old_order.push_back(cand.passage.id);
    }
    auto& new_order = record["new_order"] = detail::ordered_json::array();
    auto& qg_scores = record["qg_scores"] = detail::ordered_json::array();
    for (const auto& cand : after.candidates) {
        new_order.push_back(cand.passage.id);
        qg_scores.push_back(cand.qg_score.value_or(0.0));
    }
    return record.dump();
}

}  // namespace xlrank
