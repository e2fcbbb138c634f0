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
#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "../json_util.hpp"
#include "../text_util.hpp"
#include "xlrank/cli.hpp"
#include "xlrank/embedding.hpp"
#include "xlrank/qa_file.hpp"
#include "xlrank/report.hpp"
#include "xlrank/run_file.hpp"
#include "xlrank/search.hpp"

namespace xlrank::cli {

namespace {

namespace fs = std::filesystem;
using detail::json;
using detail::ordered_json;

void
write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path());
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw PreconditionError("cannot write '" + tmp.string() + "'");
        }
        out << content;
        if (!out.flush()) {
            throw PreconditionError("write to '" + tmp.string() + "' failed");
        }
    }
    fs::rename(tmp, path);
}

std::string
kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::kInput:
            return "input";
        case ErrorKind::kService:
            return "service";
        case ErrorKind::kOther:
            break;
    }
    return "other";
}

/// Calls fn(record, line_no) for each non-blank line of a JSONL file.
template <typename Fn>
void
for_each_record(const fs::path& path, Fn&& fn) {
    std::ifstream in(path);
    if (!in) {
        throw PreconditionError("cannot open '" + path.string() + "'");
    }
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim_whitespace(line).empty()) {
            continue;
        }
        fn(detail::parse_json_line(line, line_no), line_no);
    }
}

/// Wraps errors from reading `path` so the message names the file.
template <typename Fn>
auto
with_file(const fs::path& path, Fn&& fn) {
    try {
        return fn();
    } catch (const Error&) {
        std::throw_with_nested(Error("'" + path.string() + "'"));
    }
}

struct QuestionEntry {
    Question question;
    std::vector<std::string> answers;
    std::unordered_set<std::string> positive_ids;
};

std::unordered_map<std::string, Passage>
read_passages(const fs::path& path) {
    std::unordered_map<std::string, Passage> out;
    for_each_record(path, [&](const json& record, std::size_t line_no) {
        Passage passage;
        passage.id = detail::as_id(detail::require(record, "id", line_no, ""), line_no, "id");
        passage.title = detail::optional_string(record, "title", line_no, "");
        passage.text = detail::require_string(record, "text", line_no, "");
        passage.lang = detail::language_field(record, "lang", line_no, "", false);
        const std::string id = passage.id;
        if (!out.emplace(id, std::move(passage)).second) {
            throw ValidationError("line " + std::to_string(line_no) + ": duplicate passage id '" +
                                  id + "'");
        }
    });
    return out;
}

std::unordered_map<std::string, QuestionEntry>
read_questions(const fs::path& path) {
    std::unordered_map<std::string, QuestionEntry> out;
    for_each_record(path, [&](const json& record, std::size_t line_no) {
        QuestionEntry entry;
        entry.question.id =
            detail::as_id(detail::require(record, "id", line_no, ""), line_no, "id");
        entry.question.text = detail::require_string(record, "question", line_no, "");
        entry.question.lang = detail::language_field(record, "lang", line_no, "", true);
        if (auto it = record.find("answers"); it != record.end() && !it->is_null()) {
            if (!it->is_array()) {
                throw ParseError(line_no, "field 'answers' must be an array of strings");
            }
            for (const auto& answer : *it) {
                if (!answer.is_string()) {
                    throw ParseError(line_no, "field 'answers' must be an array of strings");
                }
                entry.answers.push_back(answer.get<std::string>());
            }
        }
        if (auto it = record.find("positive_ids"); it != record.end() && !it->is_null()) {
            if (!it->is_array()) {
                throw ParseError(line_no, "field 'positive_ids' must be an array");
            }
            for (const auto& id : *it) {
                entry.positive_ids.insert(detail::as_id(id, line_no, "positive_ids"));
            }
        }
        const std::string id = entry.question.id;
        if (!out.emplace(id, std::move(entry)).second) {
            throw ValidationError("line " + std::to_string(line_no) + ": duplicate question id '" +
                                  id + "'");
        }
    });
    return out;
}

std::string
runs_to_string(std::span<const RetrievalRun> runs) {
    std::ostringstream out;
    write_runs(out, runs);
    return out.str();
}

void
verify_run_output(const fs::path& path, std::size_t expected) {
    std::size_t parsed = 0;
    try {
        parsed = parse_run_file(path).size();
    } catch (const std::exception& e) {
        throw OutputValidationError("'" + path.string() + "' does not read back: " + describe(e));
    }
    if (parsed != expected) {
        throw OutputValidationError(fmt::format("'{}' holds {} runs, expected {}", path.string(),
                                                parsed, expected));
    }
}

bool
needs_translator(ExperimentMode mode) {
    return mode == ExperimentMode::kPassageTranslated || mode == ExperimentMode::kQuestionTranslated;
}

}  // namespace

void
cmd_search(const PipelineConfig& config, std::ostream& log) {
    config.validate(Command::kSearch);
    const EmbeddingMatrix matrix = with_file(config.embeddings, [&] { return load_matrix(config.embeddings); });
    const EmbeddingMatrix queries = with_file(config.queries, [&] { return load_matrix(config.queries); });
    if (queries.dim() != matrix.dim()) {
        throw PreconditionError(fmt::format("query dimension {} does not match passage dimension {}",
                                            queries.dim(), matrix.dim()));
    }
    const auto passages = with_file(config.passages, [&] { return read_passages(config.passages); });
    const auto questions =
        with_file(config.questions, [&] { return read_questions(config.questions); });

    SearchOptions options;
    options.workers = config.workers;
    std::vector<RetrievalRun> runs;
    runs.reserve(queries.rows());
    for (std::size_t r = 0; r < queries.rows(); ++r) {
        const std::string& qid = queries.ids()[r];
        const auto q = questions.find(qid);
        if (q == questions.end()) {
            throw ValidationError("query '" + qid + "' has no entry in the questions file");
        }
        const SearchResult result = top_k(queries.row(r), matrix, config.k, options);
        RetrievalRun run;
        run.question = q->second.question;
        run.answers = q->second.answers;
        for (std::size_t i = 0; i < result.entries.size(); ++i) {
            const SearchHit& hit = result.entries[i];
            const auto p = passages.find(hit.id);
            if (p == passages.end()) {
                throw ValidationError("embedding row '" + hit.id +
                                      "' has no entry in the passages file");
            }
            Candidate cand;
            cand.passage = p->second;
            cand.retriever_score = hit.score;
            cand.rank = cand.orig_rank = static_cast<int>(i) + 1;
            cand.is_positive = q->second.positive_ids.contains(hit.id);
            run.candidates.push_back(std::move(cand));
        }
        run.total_positives = count_leading_positives(run);
        validate_run(run);
        runs.push_back(std::move(run));
    }

    const fs::path out = config.output_dir / kSearchRunFile;
    write_file(out, runs_to_string(runs));
    verify_run_output(out, runs.size());
    log << fmt::format("search: {} queries, {} passages, k={} -> {}\n", queries.rows(),
                       matrix.rows(), config.k, out.string());
}

void
cmd_rerank(const PipelineConfig& config, std::ostream& log) {
    config.validate(Command::kRerank);
    const fs::path& input = config.runs.front();
    const auto runs = with_file(input, [&] { return parse_run_file(input); });

    check_service(config.scorer, config.service, "scorer");
    std::unique_ptr<Translator> translator;
    if (needs_translator(config.mode)) {
        check_service(config.translator, config.service, "translator");
        translator = make_translator(config);
    }
    const auto scorer = make_scorer(config);

    CorpusRerankOptions options;
    options.k = config.k;
    options.policy = config.policy;
    options.workers = config.workers;
    const CorpusRerankResult result =
        rerank_corpus(runs, *scorer, config.mode, translator.get(), options);

    std::unordered_map<std::string, const RetrievalRun*> by_id;
    for (const auto& run : runs) {
        by_id.emplace(run.question.id, &run);
    }
    std::string report;
    for (const auto& after : result.runs) {
        report += serialize_rerank_report(*by_id.at(after.question.id), after) + "\n";
    }
    std::string errors;
    for (const auto& failure : result.failures) {
        ordered_json record;
        record["q_id"] = failure.question_id;
        record["kind"] = kind_name(failure.kind);
        record["error"] = failure.message;
        errors += record.dump() + "\n";
    }

    const fs::path out = config.output_dir / kRerankRunFile;
    write_file(out, runs_to_string(result.runs));
    write_file(config.output_dir / kRerankReportFile, report);
    write_file(config.output_dir / kRerankErrorsFile, errors);
    verify_run_output(out, result.runs.size());
    log << fmt::format("rerank: {} runs, {} reranked, {} failed, mode={} -> {}\n", runs.size(),
                       result.runs.size(), result.failures.size(), to_string(config.mode),
                       out.string());
    for (const auto& failure : result.failures) {
        log << fmt::format("  skipped '{}': {}\n", failure.question_id, failure.message);
    }
}

void
cmd_evaluate(const PipelineConfig& config, std::ostream& log) {
    config.validate(Command::kEvaluate);

    std::unordered_map<std::string, int> frozen;
    if (!config.original.empty()) {
        for (const auto& run :
             with_file(config.original, [&] { return parse_run_file(config.original); })) {
            frozen.emplace(run.question.id, run.total_positives);
        }
    }

    EvalOptions options;
    options.ks = config.ks;
    options.mrr_mode = config.mrr_mode;

    std::vector<MetricRow> rows;
    std::string machine;
    std::string excluded_note;
    for (std::size_t i = 0; i < config.runs.size(); ++i) {
        const fs::path& path = config.runs[i];
        const std::string label =
            config.labels.empty() ? path.stem().string() : config.labels[i];
        auto runs = with_file(path, [&] { return parse_run_file(path); });

        std::vector<RunMetrics> metrics;
        std::vector<std::string> excluded;
        for (auto& run : runs) {
            if (!frozen.empty()) {
                const auto it = frozen.find(run.question.id);
                if (it == frozen.end()) {
                    throw ValidationError("question '" + run.question.id + "' of '" +
                                          path.string() + "' is missing from the original run");
                }
                run.total_positives = it->second;
            }
            RetrievalRun resolved;
            try {
                resolved = resolve_languages(std::move(run));
            } catch (const Error&) {
                excluded.push_back(run.question.id);
                continue;
            }
            if (!languages_resolved(resolved)) {
                excluded.push_back(resolved.question.id);
                continue;
            }
            metrics.push_back(evaluate_run(resolved, options));
        }

        const MetricsReport report = aggregate(metrics, config.ks);
        for (const auto& [lang, values] : report.per_language) {
            auto check = [&](double v) {
                if (!std::isfinite(v)) {
                    throw OutputValidationError("non-finite metric for '" + lang.str() + "' in " +
                                                label);
                }
            };
            for (const auto& [k, v] : values.positives_at) check(v);
            for (const auto& [k, v] : values.recall_at) check(v);
            check(values.mrr_same);
            check(values.mrr_cross);
        }
        machine += render_machine_readable(report, label);
        rows.push_back(to_metric_row(report, label));
        if (!excluded.empty()) {
            excluded_note += fmt::format("{}: {} run(s) excluded, language unresolved: {}\n", label,
                                         excluded.size(), fmt::join(excluded, ", "));
        }
        log << fmt::format("evaluate: {} -> {} runs scored, {} excluded\n", path.string(),
                           metrics.size(), excluded.size());
    }

    std::optional<MetricRow> gain_row;
    if (rows.size() == 2) {
        gain_row = gain(rows[0], rows[1]);
    }
    std::string tables = render_tables(rows, config.ks, gain_row);
    if (!excluded_note.empty()) {
        tables += "\n" + excluded_note;
    }
    write_file(config.output_dir / kMetricsJsonFile, machine);
    write_file(config.output_dir / kMetricsTableFile, tables);
}

void
cmd_augment(const PipelineConfig& config, std::ostream& log) {
    config.validate(Command::kAugment);
    const auto source = with_file(config.source, [&] { return load_qa_source(config.source); });
    check_service(config.translator, config.service, "translator");
    const auto translator = make_translator(config);

    const AugmentResult result =
        augment_corpus(source, config.augmentation, *translator, config.policy, config.workers);

    const std::size_t expected = result.n_source * config.augmentation.target_langs.size();
    if (result.kept.size() + result.dropped + result.errored != expected) {
        throw OutputValidationError(fmt::format("augmentation accounted for {} of {} examples",
                                                result.kept.size() + result.dropped +
                                                    result.errored,
                                                expected));
    }
    std::ostringstream augmented;
    write_qa_examples(augmented, result.kept);
    std::string readers;
    for (const QAExample& example : result.kept) {
        if (!filter_contains_answer(example, config.augmentation.containment)) {
            throw OutputValidationError("kept example '" + example.question.id +
                                        "' does not contain its answer");
        }
        std::vector<Passage> passages = example.positives;
        passages.insert(passages.end(), example.negatives.begin(), example.negatives.end());
        readers += serialize_reader_record(build_reader_input(
                       example.question, passages, example.answers,
                       config.augmentation.max_input_tokens)) +
                   "\n";
    }

    write_file(config.output_dir / kAugmentedFile, augmented.str());
    write_file(config.output_dir / kAugmentSummaryFile, serialize_augment_summary(result) + "\n");
    write_file(config.output_dir / kReaderInputsFile, readers);
    log << fmt::format("augment: {} source examples x {} languages: {} kept, {} dropped, {} errored\n",
                       result.n_source, config.augmentation.target_langs.size(),
                       result.kept.size(), result.dropped, result.errored);
}

}  // namespace xlrank::cli
