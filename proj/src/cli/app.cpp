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
#include <cstdlib>
#include <ostream>
#include <string_view>
#include <thread>

#include "CLI11.hpp"
#include "xlrank/cli.hpp"

namespace xlrank::cli {

namespace {

std::size_t
default_worker_count() {
    const unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

bool
given_on_command_line(int argc, const char* const* argv, std::string_view flag) {
    for (int i = 1; i < argc; ++i) {
        const std::string_view arg = argv[i];
        if (arg == flag || (arg.starts_with(flag) && arg.size() > flag.size() &&
                            arg[flag.size()] == '=')) {
            return true;
        }
    }
    return false;
}

}  // namespace

int
run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    PipelineConfig config;
    config.workers = default_worker_count();

    std::string policy = "fail_fast";
    std::string mode = "direct_prompt";
    std::string mrr_mode = "first";
    std::string containment = "exact";
    std::vector<std::string> target_langs;

    CLI::App app{"Cross-lingual passage retrieval, re-ranking, evaluation and augmentation"};
    app.set_config("--config", "", "INI config file; command-line flags take precedence");
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--workers", config.workers, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--policy", policy, "Per-item failure policy")
        ->check(CLI::IsMember({"fail_fast", "skip"}));
    app.add_option("--output", config.output_dir, "Output directory");
    app.add_option("--timeout-ms", config.service.timeout_ms, "Service call timeout");
    app.add_option("--max-retries", config.service.max_retries, "Retries on transport failure");
    app.add_option("--batch-size", config.service.batch_size, "Scorer requests per call");
    app.add_option("--parallelism", config.service.parallelism, "Concurrent service calls");
    app.add_option("--backoff-ms", config.service.backoff_ms, "First retry delay");

    auto* search = app.add_subcommand("search", "Exact top-k inner-product search");
    search->add_option("--embeddings", config.embeddings, "Passage embedding matrix")->required();
    search->add_option("--queries", config.queries, "Query embedding matrix")->required();
    search->add_option("--passages", config.passages, "Passages JSONL")->required();
    search->add_option("--questions", config.questions, "Questions JSONL")->required();
    search->add_option("-k,--k", config.k, "Results per query");

    auto* rerank = app.add_subcommand("rerank", "Re-rank a run file by question likelihood");
    rerank->add_option("--runs", config.runs, "Input run file")->required()->expected(1);
    rerank->add_option("--mode", mode, "Experiment mode")
        ->check(CLI::IsMember(
            {"direct_prompt", "passage_translated", "question_translated", "language_tagged"}));
    rerank->add_option("-k,--k", config.k, "Candidates re-ranked per question");
    rerank->add_option("--scorer", config.scorer, "'builtin' or a scorer service URL");
    rerank->add_option("--translator", config.translator,
                       "'identity', 'mapping:<path>' or a translator service URL");

    auto* evaluate = app.add_subcommand("evaluate", "Retrieval metrics for one or two run files");
    evaluate->add_option("--runs", config.runs, "Run files (second is compared to first)")
        ->required()
        ->expected(1, 2);
    evaluate->add_option("--labels", config.labels, "Row labels, one per run file")->delimiter(',');
    evaluate->add_option("--original", config.original, "Run file that fixes total positives");
    evaluate->add_option("--ks", config.ks, "Metric cutoffs")->delimiter(',');
    evaluate->add_option("--mrr-mode", mrr_mode, "MRR over the first or every positive")
        ->check(CLI::IsMember({"first", "mean_all"}));

    auto* augment = app.add_subcommand("augment", "Translate and filter English QA examples");
    augment->add_option("--source", config.source, "QA-example or run file")->required();
    augment->add_option("--target-langs", target_langs, "Target languages")
        ->required()
        ->delimiter(',');
    augment->add_option("--translator", config.translator,
                        "'identity', 'mapping:<path>' or a translator service URL");
    augment->add_option("--n-examples", config.augmentation.n_examples, "Source examples used");
    augment->add_option("--n-pos", config.augmentation.n_pos_paragraphs, "Positive paragraphs");
    augment->add_option("--n-neg", config.augmentation.n_neg_paragraphs, "Negative paragraphs");
    augment->add_option("--max-input-tokens", config.augmentation.max_input_tokens,
                        "Reader input budget");
    augment->add_option("--containment", containment, "Answer containment test")
        ->check(CLI::IsMember({"exact", "nfkc_casefold"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (const char* url = std::getenv(kScorerUrlEnv);
            url != nullptr && *url != '\0' && !given_on_command_line(argc, argv, "--scorer")) {
            config.scorer = url;
        }
        config.policy = parse_failure_policy(policy);
        config.mode = parse_experiment_mode(mode);
        config.mrr_mode = parse_mrr_mode(mrr_mode);
        config.augmentation.containment = parse_containment_mode(containment);
        for (const auto& code : target_langs) {
            auto lang = LanguageCode::parse(code);
            if (!lang) {
                throw ValidationError("invalid target language '" + code + "'");
            }
            config.augmentation.target_langs.push_back(*lang);
        }

        if (search->parsed()) {
            cmd_search(config, err);
        } else if (rerank->parsed()) {
            cmd_rerank(config, err);
        } else if (evaluate->parsed()) {
            cmd_evaluate(config, err);
        } else {
            cmd_augment(config, err);
        }
    } catch (const std::exception& e) {
        err << "error: " << describe(e) << '\n';
        return exit_code_for(e);
    }
    return kExitOk;
}

}  // namespace xlrank::cli
