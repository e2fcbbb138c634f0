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

#include <span>
#include <string>

#include "xlrank/contracts.hpp"
#include "xlrank/tokenizer.hpp"

namespace xlrank {

/// Smoothed passage-unigram question likelihood:
///
///     p(t | z) = (count(t, z) + 1) / (|z| + V(z) + 1)
///     score    = (1/|q|) * sum_t ln p(q_t | z)
///
/// |z| is the passage token count and V(z) its number of distinct tokens.
/// The sum runs left to right over the question in double precision.
/// Throws PreconditionError when either sequence is empty.
LikelihoodScore
score(std::span<const std::string> question_tokens, std::span<const std::string> passage_tokens);

/// Scorer over the reference tokenizer and the unigram model above.
///
/// It conditions on passage_text only: prompt_suffix and target_lang_tag
/// steer generative models and carry no information for a unigram model,
/// so they are accepted and ignored. Stateless and thread-safe.
class ReferenceScorer final : public Scorer {
 public:
    LikelihoodScore
    score(const ScorerRequest& request) const override;
};

}  // namespace xlrank
