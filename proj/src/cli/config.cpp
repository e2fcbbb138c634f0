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
#include <algorithm>
#include <filesystem>

#include "xlrank/cli.hpp"
#include "xlrank/reference_scorer.hpp"

namespace xlrank::cli {

namespace {

constexpr std::string_view kMappingPrefix = "mapping:";

bool
is_url(std::string_view spec) {
    return spec.starts_with("http://") || spec.starts_with("https://");
}

void
require_file(const std::filesystem::path& path, const char* what) {
    if (path.empty()) {
        throw ValidationError(std::string("missing required path: ") + what);
    }
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec)) {
        throw PreconditionError(std::string(what) + " '" + path.string() + "' does not exist");
    }
}

void
validate_translator_spec(const std::string& spec) {
    if (spec == "identity" || is_url(spec)) {
        return;
    }
    if (spec.starts_with(kMappingPrefix)) {
        require_file(spec.substr(kMappingPrefix.size()), "translator mapping file");
        return;
    }
    throw ValidationError("translator must be 'identity', 'mapping:<path>' or a URL, got '" +
                          spec + "'");
}

}  // namespace

ServiceEndpoint
ServiceOptions::endpoint(const std::string& url) const {
    ServiceEndpoint out;
    out.base_url = url;
    out.timeout = std::chrono::milliseconds(timeout_ms);
    out.max_retries = max_retries;
    out.batch_size = batch_size;
    out.parallelism = parallelism;
    out.backoff_base = std::chrono::milliseconds(backoff_ms);
    out.validate();
    return out;
}

void
PipelineConfig::validate(Command command) const {
    if (workers < 1) {
        throw ValidationError("workers must be at least 1");
    }
    if (output_dir.empty()) {
        throw ValidationError("output directory must not be empty");
    }
    if (k < 1) {
        throw ValidationError("k must be at least 1");
    }
    if (ks.empty()) {
        throw ValidationError("ks must not be empty");
    }
    for (int value : ks) {
        if (value < 1) {
            throw ValidationError("every metric cutoff must be at least 1");
        }
    }
    switch (command) {
        case Command::kSearch:
            require_file(embeddings, "embeddings");
            require_file(queries, "queries");
            require_file(passages, "passages");
            require_file(questions, "questions");
            break;
        case Command::kRerank:
            if (runs.size() != 1) {
                throw ValidationError("rerank takes exactly one run file");
            }
            require_file(runs.front(), "run file");
            if (scorer != "builtin" && !is_url(scorer)) {
                throw ValidationError("scorer must be 'builtin' or a URL, got '" + scorer + "'");
            }
            if (is_url(scorer)) {
                service.endpoint(scorer);
            }
            validate_translator_spec(translator);
            break;
        case Command::kEvaluate:
            if (runs.empty() || runs.size() > 2) {
                throw ValidationError("evaluate takes one or two run files");
            }
            for (const auto& path : runs) {
                require_file(path, "run file");
            }
            if (!labels.empty() && labels.size() != runs.size()) {
                throw ValidationError("give one label per run file");
            }
            if (!original.empty()) {
                require_file(original, "original run file");
            }
            break;
        case Command::kAugment:
            require_file(source, "augmentation source");
            validate_translator_spec(translator);
            augmentation.validate();
            break;
    }
}

std::unique_ptr<Scorer>
make_scorer(const PipelineConfig& config) {
    if (config.scorer == "builtin") {
        return std::make_unique<ReferenceScorer>();
    }
    return std::make_unique<HttpScorer>(config.service.endpoint(config.scorer));
}

std::unique_ptr<Translator>
make_translator(const PipelineConfig& config) {
    const std::string& spec = config.translator;
    if (spec == "identity") {
        return std::make_unique<IdentityTranslator>();
    }
    if (spec.starts_with(kMappingPrefix)) {
        return std::make_unique<MappingTranslator>(
            MappingTranslator::from_file(spec.substr(kMappingPrefix.size())));
    }
    return std::make_unique<HttpTranslator>(config.service.endpoint(spec));
}

void
check_service(const std::string& spec, const ServiceOptions& options, const char* role) {
    if (!is_url(spec)) {
        return;
    }
    if (!health(options.endpoint(spec))) {
        throw ServiceError(std::string(role) + " service at " + spec + " is not healthy");
    }
}

int
exit_code_for(const std::exception& e) {
    if (dynamic_cast<const OutputValidationError*>(&e) != nullptr) {
        return kExitOutputInvalid;
    }
    return classify(e) == ErrorKind::kService ? kExitService : kExitInput;
}

}  // namespace xlrank::cli
