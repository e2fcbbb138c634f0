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
#include "xlrank/contracts.hpp"

#include <exception>
#include <fstream>

#include "json.hpp"
#include "xlrank/errors.hpp"

namespace xlrank {

FailurePolicy
parse_failure_policy(std::string_view name) {
    if (name == "fail_fast") {
        return FailurePolicy::kFailFast;
    }
    if (name == "skip") {
        return FailurePolicy::kSkip;
    }
    throw ValidationError("unknown failure policy '" + std::string(name) + "'");
}

std::vector<LikelihoodScore>
Scorer::score_batch(std::span<const ScorerRequest> requests) const {
    std::vector<LikelihoodScore> out;
    out.reserve(requests.size());
    for (std::size_t i = 0; i < requests.size(); ++i) {
        try {
            out.push_back(score(requests[i]));
        } catch (const std::exception&) {
            std::throw_with_nested(ItemError(i));
        }
    }
    return out;
}

namespace {

void
check_target(const LanguageCode& tgt) {
    if (tgt.is_undetermined()) {
        throw PreconditionError("translation target language must not be 'und'");
    }
}

}  // namespace

std::string
IdentityTranslator::translate(std::string_view text, const LanguageCode&,
                              const LanguageCode& tgt) const {
    check_target(tgt);
    return std::string(text);
}

MappingTranslator::MappingTranslator(std::map<std::string, std::string, std::less<>> table)
    : table_(std::move(table)) {
}

MappingTranslator
MappingTranslator::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw PreconditionError("cannot open translation mapping '" + path + "'");
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError("translation mapping '" + path + "': " + e.what());
    }
    if (!doc.is_object()) {
        throw FormatError("translation mapping '" + path + "' must be a JSON object");
    }
    std::map<std::string, std::string, std::less<>> table;
    for (const auto& [key, value] : doc.items()) {
        if (!value.is_string()) {
            throw FormatError("translation mapping '" + path + "': value for '" + key +
                              "' is not a string");
        }
        table.emplace(key, value.get<std::string>());
    }
    return MappingTranslator(std::move(table));
}

std::string
MappingTranslator::translate(std::string_view text, const LanguageCode&,
                             const LanguageCode& tgt) const {
    check_target(tgt);
    if (auto it = table_.find(text); it != table_.end()) {
        return it->second;
    }
    return std::string(text);
}

}  // namespace xlrank
