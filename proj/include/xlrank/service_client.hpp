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
// HTTP/1.1 + JSON clients for external scorer and translator services.
//
//   POST {base}/v1/score      {"items":[{"question","question_lang","passage",
//                               "passage_lang","prompt_suffix","target_lang_tag"}]}
//                          -> {"items":[{"avg_log_likelihood","num_tokens"}]}
//   POST {base}/v1/translate  {"text","src","tgt"} -> {"text"}
//   GET  {base}/v1/health     -> {"status":"ok"}
//
// Error responses are 4xx/5xx with {"error": "..."}.

#pragma once

#include <chrono>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "xlrank/contracts.hpp"

namespace xlrank {

struct ServiceEndpoint {
    std::string base_url;
    std::chrono::milliseconds timeout{30000};
    int max_retries = 2;
    std::size_t batch_size = 64;
    /// Chunks of one score_batch call in flight at once.
    std::size_t parallelism = 4;
    /// Wait before retry i (0-based) is backoff_base * 2^i.
    std::chrono::milliseconds backoff_base{250};

    /// Throws ValidationError when a field is out of range.
    void
    validate() const;
};

inline constexpr std::size_t kMaxBatchSize = 256;

using ScoreResponse = LikelihoodScore;

/// Splits `requests` into chunks of batch_size and posts each to
/// /v1/score. Transport failures are retried with exponential backoff;
/// HTTP error statuses are not. Responses come back in request order.
/// A failing chunk is reported as ServiceError / ProtocolError nested in
/// ItemError(first index of the chunk).
std::vector<ScoreResponse>
score_batch(const ServiceEndpoint& endpoint, std::span<const ScorerRequest> requests);

std::string
translate(const ServiceEndpoint& endpoint, std::string_view text, const LanguageCode& src,
          const LanguageCode& tgt);

bool
health(const ServiceEndpoint& endpoint);

/// Request body for POST /v1/score, exactly as sent on the wire.
std::string
encode_score_request(std::span<const ScorerRequest> requests);

/// Parses a /v1/score response body; throws ProtocolError unless it holds
/// exactly `expected` finite items with num_tokens >= 1.
std::vector<ScoreResponse>
decode_score_response(std::string_view body, std::size_t expected);

/// Request body for POST /v1/translate.
std::string
encode_translate_request(std::string_view text, const LanguageCode& src, const LanguageCode& tgt);

class HttpScorer final : public Scorer {
 public:
    explicit HttpScorer(ServiceEndpoint endpoint);

    LikelihoodScore
    score(const ScorerRequest& request) const override;

    std::vector<LikelihoodScore>
    score_batch(std::span<const ScorerRequest> requests) const override;

    const ServiceEndpoint&
    endpoint() const noexcept {
        return endpoint_;
    }

 private:
    ServiceEndpoint endpoint_;
};

class HttpTranslator final : public Translator {
 public:
    explicit HttpTranslator(ServiceEndpoint endpoint);

    std::string
    translate(std::string_view text, const LanguageCode& src,
              const LanguageCode& tgt) const override;

 private:
    ServiceEndpoint endpoint_;
};

}  // namespace xlrank
