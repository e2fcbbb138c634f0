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

#include "xlrank/run_file.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include "json_util.hpp"
#include "text_util.hpp"

namespace xlrank {

using detail::json;
using detail::ordered_json;

RetrievalRun
parse_run_record(std::string_view line, std::size_t line_no) {
    const json record = detail::parse_json_line(line, line_no);

    RetrievalRun run;
    run.question.id = detail::as_id(detail::require(record, "q_id", line_no, ""), line_no, "q_id");
    run.question.text = detail::require_string(record, "question", line_no, "");
    run.question.lang = detail::language_field(record, "lang", line_no, "", true);

    if (auto it = record.find("answers"); it != record.end() && !it->is_null()) {
        if (!it->is_array()) {
            throw ParseError(line_no, "field 'answers' must be an array of strings");
        }
        for (const auto& answer : *it) {
            if (!answer.is_string()) {
                throw ParseError(line_no, "field 'answers' must be an array of strings");
            }
            run.answers.push_back(answer.get<std::string>());
        }
    }

    const json& ctxs = detail::require(record, "ctxs", line_no, "");
    if (!ctxs.is_array()) {
        throw ParseError(line_no, "field 'ctxs' must be an array");
    }
    for (std::size_t i = 0; i < ctxs.size(); ++i) {
        const std::string where = "ctxs[" + std::to_string(i) + "]";
        const json& ctx = ctxs[i];
        if (!ctx.is_object()) {
            throw ParseError(line_no, "'" + where + "' must be an object");
        }
        Candidate cand;
        cand.passage.id =
            detail::as_id(detail::require(ctx, "id", line_no, where), line_no, where + ".id");
        cand.passage.title = detail::optional_string(ctx, "title", line_no, where);
        cand.passage.text = detail::require_string(ctx, "text", line_no, where);
        cand.passage.lang = detail::language_field(ctx, "lang", line_no, where, false);
        cand.retriever_score = detail::optional_real(ctx, "score", line_no, where);
        const json& positive = detail::require(ctx, "is_positive", line_no, where);
        if (!positive.is_boolean()) {
            throw ParseError(line_no, "field '" + where + ".is_positive' must be a boolean");
        }
        cand.is_positive = positive.get<bool>();
        cand.qg_score = detail::optional_real(ctx, "qg_score", line_no, where);
        cand.rank = static_cast<int>(i) + 1;
        cand.orig_rank = cand.rank;
        if (auto it = ctx.find("orig_rank"); it != ctx.end() && !it->is_null()) {
            if (!it->is_number_integer()) {
                throw ParseError(line_no, "field '" + where + ".orig_rank' must be an integer");
            }
            cand.orig_rank = it->get<int>();
        }
        run.candidates.push_back(std::move(cand));
    }

    if (auto it = record.find("total_positives"); it != record.end() && !it->is_null()) {
        if (!it->is_number_integer() || it->get<long long>() < 0) {
            throw ParseError(line_no, "field 'total_positives' must be a non-negative integer");
        }
        run.total_positives = it->get<int>();
    } else {
        run.total_positives = count_leading_positives(run);
    }

    try {
        validate_run(run);
    } catch (const ValidationError& e) {
        throw ValidationError("line " + std::to_string(line_no) + ": " + e.what());
    }
    return run;
}

void
validate_run(const RetrievalRun& run) {
    const std::string who = "question '" + run.question.id + "'";
    if (run.question.id.empty()) {
        throw ValidationError("question id is empty");
    }
    if (detail::trim_whitespace(run.question.text).empty()) {
        throw ValidationError(who + ": question text is empty");
    }
    if (run.candidates.empty()) {
        throw ValidationError(who + ": empty candidate list");
    }
    if (run.total_positives < 0) {
        throw ValidationError(who + ": negative total_positives");
    }
    const auto n = run.candidates.size();
    std::unordered_set<std::string_view> ids;
    std::vector<bool> seen_orig(n + 1, false);
    for (std::size_t i = 0; i < n; ++i) {
        const Candidate& cand = run.candidates[i];
        if (cand.passage.id.empty()) {
            throw ValidationError(who + ": candidate " + std::to_string(i + 1) + " has empty id");
        }
        if (cand.passage.text.empty()) {
            throw ValidationError(who + ": passage '" + cand.passage.id + "' has empty text");
        }
        if (!ids.insert(cand.passage.id).second) {
            throw ValidationError(who + ": duplicate passage id '" + cand.passage.id + "'");
        }
        if (cand.rank != static_cast<int>(i) + 1) {
            throw ValidationError(who + ": rank of '" + cand.passage.id + "' is " +
                                  std::to_string(cand.rank) + ", expected " +
                                  std::to_string(i + 1));
        }
        if (cand.orig_rank < 1 || static_cast<std::size_t>(cand.orig_rank) > n ||
            seen_orig[static_cast<std::size_t>(cand.orig_rank)]) {
            throw ValidationError(who + ": orig_rank values are not a permutation of 1.." +
                                  std::to_string(n));
        }
        seen_orig[static_cast<std::size_t>(cand.orig_rank)] = true;
    }
}

std::vector<RetrievalRun>
parse_runs(std::istream& in) {
    std::vector<RetrievalRun> runs;
    std::unordered_set<std::string> question_ids;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim_whitespace(line).empty()) {
            continue;
        }
        RetrievalRun run = parse_run_record(line, line_no);
        if (!question_ids.insert(run.question.id).second) {
            throw ValidationError("line " + std::to_string(line_no) + ": duplicate question id '" +
                                  run.question.id + "'");
        }
        runs.push_back(std::move(run));
    }
    return runs;
}

std::vector<RetrievalRun>
parse_run_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw PreconditionError("cannot open run file '" + path.string() + "'");
    }
    return parse_runs(in);
}

std::string
serialize_run(const RetrievalRun& run) {
    ordered_json record;
    record["q_id"] = run.question.id;
    record["question"] = run.question.text;
    record["lang"] = run.question.lang.str();
    if (!run.answers.empty()) {
        record["answers"] = run.answers;
    }
    record["total_positives"] = run.total_positives;
    ordered_json ctxs = ordered_json::array();
    for (const Candidate& cand : run.candidates) {
        ordered_json ctx;
        ctx["id"] = cand.passage.id;
        ctx["title"] = cand.passage.title;
        ctx["text"] = cand.passage.text;
        if (cand.retriever_score) {
            ctx["score"] = *cand.retriever_score;
        }
        ctx["is_positive"] = cand.is_positive;
        if (!cand.passage.lang.is_undetermined()) {
            ctx["lang"] = cand.passage.lang.str();
        }
        ctx["orig_rank"] = cand.orig_rank;
        if (cand.qg_score) {
            ctx["qg_score"] = *cand.qg_score;
        }
        ctxs.push_back(std::move(ctx));
    }
    record["ctxs"] = std::move(ctxs);
    return record.dump();
}

void
write_runs(std::ostream& out, std::span<const RetrievalRun> runs) {
    for (const RetrievalRun& run : runs) {
        out << serialize_run(run) << '\n';
    }
}

void
write_run_file(const std::filesystem::path& path, std::span<const RetrievalRun> runs) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw PreconditionError("cannot write run file '" + path.string() + "'");
    }
    write_runs(out, runs);
}

int
count_leading_positives(const RetrievalRun& run) {
    int count = 0;
    const std::size_t depth = std::min<std::size_t>(run.candidates.size(), kTotalPositivesDepth);
    for (std::size_t i = 0; i < depth; ++i) {
        count += run.candidates[i].is_positive ? 1 : 0;
    }
    return count;
}

}  // namespace xlrank
