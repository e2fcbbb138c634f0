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
#include "xlrank/reference_scorer.hpp"

#include <cmath>
#include <string_view>
#include <unordered_map>

#include "xlrank/errors.hpp"

namespace xlrank {

LikelihoodScore
score(std::span<const std::string> question_tokens, std::span<const std::string> passage_tokens) {
    if (question_tokens.empty()) {
        throw PreconditionError("score: question has no tokens");
    }
    if (passage_tokens.empty()) {
        throw PreconditionError("score: passage has no tokens");
    }
    std::unordered_map<std::string_view, std::size_t> counts;
    for (const auto& token : passage_tokens) {
        ++counts[token];
    }
    const double denominator =
        static_cast<double>(passage_tokens.size() + counts.size() + 1);

    double sum = 0.0;
    for (const auto& token : question_tokens) {
        const auto it = counts.find(token);
        const double numerator = static_cast<double>((it == counts.end() ? 0 : it->second) + 1);
        sum += std::log(numerator / denominator);
    }
    return {sum / static_cast<double>(question_tokens.size()),
            static_cast<int>(question_tokens.size())};
}

LikelihoodScore
ReferenceScorer::score(const ScorerRequest& request) const {
    const TokenSequence question = tokenize(request.question_text);
    const TokenSequence passage = tokenize(request.passage_text);
    return xlrank::score(question, passage);
}

}  // namespace xlrank
