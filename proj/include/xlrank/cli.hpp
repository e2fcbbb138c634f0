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
// The xlrank command line: search, rerank, evaluate and augment.
//
// Each command reads a PipelineConfig, writes fixed-name files into the
// output directory and reports problems by throwing. run() maps those
// exceptions to exit codes:
//
//   0  success
//   1  an output file failed its post-write check
//   2  bad input, config or precondition
//   3  external service unreachable or misbehaving

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "xlrank/augmentation.hpp"
#include "xlrank/contracts.hpp"
#include "xlrank/errors.hpp"
#include "xlrank/metrics.hpp"
#include "xlrank/reranker.hpp"
#include "xlrank/service_client.hpp"

namespace xlrank::cli {

enum class Command {
    kSearch,
    kRerank,
    kEvaluate,
    kAugment,
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitOutputInvalid = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitService = 3;

inline constexpr const char* kScorerUrlEnv = "XLRANK_SCORER_URL";

inline constexpr const char* kSearchRunFile = "search.run.jsonl";
inline constexpr const char* kRerankRunFile = "reranked.run.jsonl";
inline constexpr const char* kRerankReportFile = "rerank_report.jsonl";
inline constexpr const char* kRerankErrorsFile = "rerank_errors.jsonl";
inline constexpr const char* kMetricsJsonFile = "metrics.jsonl";
inline constexpr const char* kMetricsTableFile = "metrics.txt";
inline constexpr const char* kAugmentedFile = "augmented.jsonl";
inline constexpr const char* kAugmentSummaryFile = "augment_summary.json";
inline constexpr const char* kReaderInputsFile = "reader_inputs.jsonl";

/// Thrown when a written artifact does not read back as valid.
class OutputValidationError : public Error {
 public:
    using Error::Error;
};

struct ServiceOptions {
    long timeout_ms = 30000;
    int max_retries = 2;
    std::size_t batch_size = 64;
    std::size_t parallelism = 4;
    long backoff_ms = 250;

    ServiceEndpoint
    endpoint(const std::string& url) const;
};

struct PipelineConfig {
    std::filesystem::path output_dir = ".";
    std::size_t workers = 1;
    FailurePolicy policy = FailurePolicy::kFailFast;
    ServiceOptions service;

    // search
    std::filesystem::path embeddings;
    std::filesystem::path queries;
    std::filesystem::path passages;
    std::filesystem::path questions;
    std::size_t k = kDefaultRerankDepth;

    // rerank, evaluate
    std::vector<std::filesystem::path> runs;
    ExperimentMode mode = ExperimentMode::kDirectPrompt;
    /// "builtin" or an http:// base URL.
    std::string scorer = "builtin";
    /// "identity", "mapping:<path>" or an http:// base URL.
    std::string translator = "identity";

    // evaluate
    std::vector<std::string> labels;
    std::filesystem::path original;
    std::vector<int> ks{5, 15};
    MrrMode mrr_mode = MrrMode::kFirst;

    // augment
    std::filesystem::path source;
    AugmentationConfig augmentation;

    /// Throws ValidationError (bad values) or PreconditionError (missing
    /// input files) for the fields `command` uses.
    void
    validate(Command command) const;
};

std::unique_ptr<Scorer>
make_scorer(const PipelineConfig& config);

std::unique_ptr<Translator>
make_translator(const PipelineConfig& config);

/// Throws ServiceError when `spec` is a URL whose /v1/health check fails.
void
check_service(const std::string& spec, const ServiceOptions& options, const char* role);

/// Exact top-k per query vector. Inputs: passage embedding matrix, query
/// matrix (row ids are question ids), passages JSONL {"id","title","text",
/// "lang"?} and questions JSONL {"id","question","lang","answers"?,
/// "positive_ids"?}.
void
cmd_search(const PipelineConfig& config, std::ostream& log);

void
cmd_rerank(const PipelineConfig& config, std::ostream& log);

/// One or two run files; with two, a gain row (second minus first) is
/// added to the tables.
void
cmd_evaluate(const PipelineConfig& config, std::ostream& log);

void
cmd_augment(const PipelineConfig& config, std::ostream& log);

int
exit_code_for(const std::exception& e);

/// Parses the command line (and --config file), runs the subcommand and
/// returns the exit code. Diagnostics go to `err`, help text to `out`.
int
run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace xlrank::cli
