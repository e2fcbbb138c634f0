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
#include "xlrank/service_client.hpp"

#include <cmath>
#include <exception>
#include <thread>

#include "httplib.h"
#include "json_util.hpp"
#include "parallel.hpp"
#include "xlrank/errors.hpp"

namespace xlrank {

using detail::json;
using detail::ordered_json;

namespace {

struct Url {
    std::string origin;  // scheme://host[:port]
    std::string prefix;  // path prefix without trailing slash
};

Url
split_url(const std::string& base_url) {
    const auto scheme_end = base_url.find("://");
    if (scheme_end == std::string::npos) {
        throw ValidationError("service URL '" + base_url + "' has no scheme");
    }
    if (base_url.compare(0, scheme_end, "http") != 0) {
        throw ValidationError("service URL '" + base_url + "': only http:// is supported");
    }
    const auto path_begin = base_url.find('/', scheme_end + 3);
    Url url;
    url.origin = base_url.substr(0, path_begin);
    if (path_begin != std::string::npos) {
        url.prefix = base_url.substr(path_begin);
        while (!url.prefix.empty() && url.prefix.back() == '/') {
            url.prefix.pop_back();
        }
    }
    return url;
}

std::string
excerpt(const std::string& body) {
    try {
        const json doc = json::parse(body);
        if (doc.is_object() && doc.contains("error") && doc["error"].is_string()) {
            return doc["error"].get<std::string>();
        }
    } catch (const json::exception&) {
    }
    constexpr std::size_t kMax = 200;
    return body.size() <= kMax ? body : body.substr(0, kMax) + "...";
}

/// One logical call: retries transport failures, returns the 2xx body.
std::string
call(const ServiceEndpoint& endpoint, const std::string& method, const std::string& path,
     const std::string& body) {
    const Url url = split_url(endpoint.base_url);
    const std::string target = url.prefix + path;
    const auto timeout_s = std::chrono::duration_cast<std::chrono::seconds>(endpoint.timeout);
    const auto timeout_us = std::chrono::duration_cast<std::chrono::microseconds>(
        endpoint.timeout - timeout_s);

    std::string last_error;
    for (int attempt = 0; attempt <= endpoint.max_retries; ++attempt) {
        if (attempt > 0) {
            std::this_thread::sleep_for(endpoint.backoff_base * (1LL << (attempt - 1)));
        }
        httplib::Client client(url.origin);
        client.set_connection_timeout(timeout_s.count(), timeout_us.count());
        client.set_read_timeout(timeout_s.count(), timeout_us.count());
        client.set_write_timeout(timeout_s.count(), timeout_us.count());
        client.set_keep_alive(false);

        httplib::Result result = method == "GET"
                                     ? client.Get(target)
                                     : client.Post(target, body, "application/json");
        if (!result) {
            last_error = httplib::to_string(result.error());
            continue;
        }
        if (result->status < 200 || result->status >= 300) {
            throw ServiceError(method + " " + endpoint.base_url + path + " returned status " +
                                   std::to_string(result->status) + ": " + excerpt(result->body),
                               result->status);
        }
        return result->body;
    }
    throw ServiceError(method + " " + endpoint.base_url + path + ": " + last_error + " after " +
                       std::to_string(endpoint.max_retries + 1) + " attempt(s)");
}

json
parse_body(const std::string& body, const std::string& what) {
    try {
        json doc = json::parse(body);
        if (!doc.is_object()) {
            throw ProtocolError(what + ": response is not a JSON object");
        }
        return doc;
    } catch (const json::exception& e) {
        throw ProtocolError(what + ": response is not valid JSON: " + e.what());
    }
}

ordered_json
nullable(const std::optional<std::string>& value) {
    return value ? ordered_json(*value) : ordered_json(nullptr);
}

}  // namespace

void
ServiceEndpoint::validate() const {
    split_url(base_url);
    if (timeout.count() <= 0) {
        throw ValidationError("service timeout must be positive");
    }
    if (max_retries < 0) {
        throw ValidationError("max_retries must be non-negative");
    }
    if (batch_size < 1 || batch_size > kMaxBatchSize) {
        throw ValidationError("batch_size must be in [1, " + std::to_string(kMaxBatchSize) + "]");
    }
    if (parallelism < 1) {
        throw ValidationError("parallelism must be at least 1");
    }
}

std::string
encode_score_request(std::span<const ScorerRequest> requests) {
    ordered_json items = ordered_json::array();
    for (const ScorerRequest& r : requests) {
        std::optional<std::string> tag;
        if (r.target_lang_tag) {
            tag = r.target_lang_tag->str();
        }
        items.push_back({
            {"question", r.question_text},
            {"question_lang", r.question_lang.str()},
            {"passage", r.passage_text},
            {"passage_lang", r.passage_lang.str()},
            {"prompt_suffix", nullable(r.prompt_suffix)},
            {"target_lang_tag", nullable(tag)},
        });
    }
    return ordered_json{{"items", std::move(items)}}.dump();
}

std::vector<ScoreResponse>
decode_score_response(std::string_view body, std::size_t expected) {
    const json doc = parse_body(std::string(body), "/v1/score");
    const auto it = doc.find("items");
    if (it == doc.end() || !it->is_array()) {
        throw ProtocolError("/v1/score: response has no 'items' array");
    }
    if (it->size() != expected) {
        throw ProtocolError("/v1/score: " + std::to_string(it->size()) + " items for " +
                            std::to_string(expected) + " requests");
    }
    std::vector<ScoreResponse> out;
    out.reserve(expected);
    for (std::size_t i = 0; i < it->size(); ++i) {
        const json& item = (*it)[i];
        const std::string where = "/v1/score: items[" + std::to_string(i) + "]";
        if (!item.is_object() || !item.contains("avg_log_likelihood") ||
            !item["avg_log_likelihood"].is_number()) {
            throw ProtocolError(where + ": missing numeric 'avg_log_likelihood'");
        }
        if (!item.contains("num_tokens") || !item["num_tokens"].is_number_integer() ||
            item["num_tokens"].get<long long>() < 1) {
            throw ProtocolError(where + ": 'num_tokens' must be an integer >= 1");
        }
        const double value = item["avg_log_likelihood"].get<double>();
        if (!std::isfinite(value)) {
            throw ProtocolError(where + ": non-finite score");
        }
        out.push_back({value, item["num_tokens"].get<int>()});
    }
    return out;
}

std::string
encode_translate_request(std::string_view text, const LanguageCode& src, const LanguageCode& tgt) {
    return ordered_json{{"text", text}, {"src", src.str()}, {"tgt", tgt.str()}}.dump();
}

std::vector<ScoreResponse>
score_batch(const ServiceEndpoint& endpoint, std::span<const ScorerRequest> requests) {
    endpoint.validate();
    if (requests.empty()) {
        throw PreconditionError("score_batch: no requests");
    }
    const std::size_t chunk = endpoint.batch_size;
    const std::size_t chunks = (requests.size() + chunk - 1) / chunk;
    std::vector<ScoreResponse> out(requests.size());
    detail::parallel_for(chunks, endpoint.parallelism, [&](std::size_t c) {
        const std::size_t begin = c * chunk;
        const auto part = requests.subspan(begin, std::min(chunk, requests.size() - begin));
        try {
            const std::string body = call(endpoint, "POST", "/v1/score", encode_score_request(part));
            const auto scores = decode_score_response(body, part.size());
            std::copy(scores.begin(), scores.end(), out.begin() + static_cast<std::ptrdiff_t>(begin));
        } catch (const std::exception&) {
            std::throw_with_nested(ItemError(begin));
        }
    });
    return out;
}

std::string
translate(const ServiceEndpoint& endpoint, std::string_view text, const LanguageCode& src,
          const LanguageCode& tgt) {
    endpoint.validate();
    if (text.empty()) {
        throw PreconditionError("translate: empty text");
    }
    if (tgt.is_undetermined()) {
        throw PreconditionError("translate: target language must not be 'und'");
    }
    const std::string body =
        call(endpoint, "POST", "/v1/translate", encode_translate_request(text, src, tgt));
    const json doc = parse_body(body, "/v1/translate");
    const auto it = doc.find("text");
    if (it == doc.end() || !it->is_string()) {
        throw ProtocolError("/v1/translate: response has no 'text' string");
    }
    std::string out = it->get<std::string>();
    if (out.empty()) {
        throw ProtocolError("/v1/translate: empty translation");
    }
    return out;
}

bool
health(const ServiceEndpoint& endpoint) {
    try {
        const json doc = parse_body(call(endpoint, "GET", "/v1/health", {}), "/v1/health");
        return doc.value("status", "") == "ok";
    } catch (const ServiceError&) {
        return false;
    }
}

HttpScorer::HttpScorer(ServiceEndpoint endpoint) : endpoint_(std::move(endpoint)) {
    endpoint_.validate();
}

LikelihoodScore
HttpScorer::score(const ScorerRequest& request) const {
    return xlrank::score_batch(endpoint_, std::span<const ScorerRequest>(&request, 1)).front();
}

std::vector<LikelihoodScore>
HttpScorer::score_batch(std::span<const ScorerRequest> requests) const {
    return xlrank::score_batch(endpoint_, requests);
}

HttpTranslator::HttpTranslator(ServiceEndpoint endpoint) : endpoint_(std::move(endpoint)) {
    endpoint_.validate();
}

std::string
HttpTranslator::translate(std::string_view text, const LanguageCode& src,
                          const LanguageCode& tgt) const {
    return xlrank::translate(endpoint_, text, src, tgt);
}

}  // namespace xlrank
