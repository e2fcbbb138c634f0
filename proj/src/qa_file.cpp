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
#include "xlrank/qa_file.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "json_util.hpp"
#include "text_util.hpp"
#include "xlrank/run_file.hpp"

namespace xlrank {

using detail::json;
using detail::ordered_json;

namespace {

std::vector<Passage>
parse_passages(const json& record, std::string_view key, const std::string& owner,
               const LanguageCode& lang, std::size_t line_no) {
    std::vector<Passage> out;
    auto it = record.find(key);
    if (it == record.end() || it->is_null()) {
        return out;
    }
    if (!it->is_array()) {
        throw ParseError(line_no, "field '" + std::string(key) + "' must be an array");
    }
    for (std::size_t i = 0; i < it->size(); ++i) {
        const std::string where = std::string(key) + "[" + std::to_string(i) + "]";
        const json& ctx = (*it)[i];
        if (!ctx.is_object()) {
            throw ParseError(line_no, "'" + where + "' must be an object");
        }
        Passage passage;
        if (auto id = ctx.find("id"); id != ctx.end() && !id->is_null()) {
            passage.id = detail::as_id(*id, line_no, where + ".id");
        } else {
            passage.id = owner + ":" + where;
        }
        passage.title = detail::optional_string(ctx, "title", line_no, where);
        passage.text = detail::require_string(ctx, "text", line_no, where);
        passage.lang = detail::language_field(ctx, "lang", line_no, where, false);
        if (passage.lang.is_undetermined()) {
            passage.lang = lang;
        }
        out.push_back(std::move(passage));
    }
    return out;
}

ordered_json
passages_json(const std::vector<Passage>& passages) {
    ordered_json out = ordered_json::array();
    for (const Passage& p : passages) {
        ordered_json ctx{{"id", p.id}, {"title", p.title}, {"text", p.text}};
        if (!p.lang.is_undetermined()) {
            ctx["lang"] = p.lang.str();
        }
        out.push_back(std::move(ctx));
    }
    return out;
}

}  // namespace

QAExample
parse_qa_record(std::string_view line, std::size_t line_no) {
    const json record = detail::parse_json_line(line, line_no);
    QAExample example;
    example.question.id =
        detail::as_id(detail::require(record, "id", line_no, ""), line_no, "id");
    example.question.text = detail::require_string(record, "question", line_no, "");
    example.question.lang = detail::language_field(record, "lang", line_no, "", true);

    const json& answers = detail::require(record, "answers", line_no, "");
    if (!answers.is_array()) {
        throw ParseError(line_no, "field 'answers' must be an array of strings");
    }
    for (const auto& answer : answers) {
        if (!answer.is_string()) {
            throw ParseError(line_no, "field 'answers' must be an array of strings");
        }
        example.answers.push_back(answer.get<std::string>());
    }
    example.positives = parse_passages(record, "positive_ctxs", example.question.id,
                                       example.question.lang, line_no);
    example.negatives = parse_passages(record, "negative_ctxs", example.question.id,
                                       example.question.lang, line_no);

    const std::string source_id = detail::optional_string(record, "source_id", line_no, "");
    if (!source_id.empty()) {
        example.provenance = Provenance{
            source_id, detail::language_field(record, "aug_lang", line_no, "", true)};
    }
    return example;
}

std::vector<QAExample>
parse_qa_examples(std::istream& in) {
    std::vector<QAExample> examples;
    std::unordered_set<std::string> ids;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim_whitespace(line).empty()) {
            continue;
        }
        QAExample example = parse_qa_record(line, line_no);
        if (!ids.insert(example.question.id).second) {
            throw ValidationError("line " + std::to_string(line_no) + ": duplicate example id '" +
                                  example.question.id + "'");
        }
        examples.push_back(std::move(example));
    }
    return examples;
}

std::string
serialize_qa_example(const QAExample& example) {
    ordered_json record;
    record["id"] = example.question.id;
    record["question"] = example.question.text;
    record["lang"] = example.question.lang.str();
    record["answers"] = example.answers;
    record["positive_ctxs"] = passages_json(example.positives);
    record["negative_ctxs"] = passages_json(example.negatives);
    if (example.provenance) {
        record["source_id"] = example.provenance->source_id;
        record["aug_lang"] = example.provenance->aug_lang.str();
    }
    return record.dump();
}

void
write_qa_examples(std::ostream& out, std::span<const QAExample> examples) {
    for (const QAExample& example : examples) {
        out << serialize_qa_example(example) << '\n';
    }
}

std::vector<QAExample>
examples_from_runs(std::span<const RetrievalRun> runs) {
    std::vector<QAExample> out;
    out.reserve(runs.size());
    for (const RetrievalRun& run : runs) {
        QAExample example;
        example.question = run.question;
        example.answers = run.answers;
        for (const Candidate& cand : run.candidates) {
            Passage passage = cand.passage;
            if (passage.lang.is_undetermined()) {
                passage.lang = run.question.lang;
            }
            (cand.is_positive ? example.positives : example.negatives).push_back(std::move(passage));
        }
        out.push_back(std::move(example));
    }
    return out;
}

std::vector<QAExample>
load_qa_source(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw PreconditionError("cannot open QA source '" + path.string() + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string content = buffer.str();

    std::istringstream first_pass(content);
    std::string line;
    std::size_t line_no = 0;
    bool is_run_file = false;
    while (std::getline(first_pass, line)) {
        ++line_no;
        if (detail::trim_whitespace(line).empty()) {
            continue;
        }
        is_run_file = detail::parse_json_line(line, line_no).contains("ctxs");
        break;
    }

    std::istringstream stream(content);
    if (!is_run_file) {
        return parse_qa_examples(stream);
    }
    const auto runs = parse_runs(stream);
    for (const RetrievalRun& run : runs) {
        if (run.answers.empty()) {
            throw ValidationError("run '" + run.question.id +
                                  "' has no 'answers' field; augmentation needs answers");
        }
    }
    return examples_from_runs(runs);
}

}  // namespace xlrank
