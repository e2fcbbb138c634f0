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
// QA-example files: one JSON object per line,
//
//   {"id": "...", "question": "...", "lang": "en", "answers": ["..."],
//    "positive_ctxs": [{"title": "...", "text": "...", "id": "..."}],
//    "negative_ctxs": [...]}
//
// Augmented records also carry "source_id" and "aug_lang".

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "xlrank/types.hpp"

namespace xlrank {

QAExample
parse_qa_record(std::string_view line, std::size_t line_no);

std::vector<QAExample>
parse_qa_examples(std::istream& in);

std::string
serialize_qa_example(const QAExample& example);

void
write_qa_examples(std::ostream& out, std::span<const QAExample> examples);

/// Positives and negatives come from the is_positive flags, in rank order.
/// Passage languages default to the question language.
std::vector<QAExample>
examples_from_runs(std::span<const RetrievalRun> runs);

/// Reads either a QA-example file or a run file (recognized by the
/// "ctxs" key of its first record).
std::vector<QAExample>
load_qa_source(const std::filesystem::path& path);

}  // namespace xlrank
