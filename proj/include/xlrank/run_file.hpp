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

// Run files: one JSON object per line,
//
//   {"q_id": "...", "question": "...", "lang": "ko",
//    "ctxs": [{"id": "...", "title": "...", "text": "...",
//              "score": 71.3 | "71.3", "is_positive": true}, ...]}
//
// Optional extensions written by this toolkit and read back when present:
// top-level "answers" and "total_positives"; per-context "lang",
// "orig_rank" and "qg_score". Other unknown fields are ignored.

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

/// Parses one run-file record. `line_no` only feeds error messages.
RetrievalRun
parse_run_record(std::string_view line, std::size_t line_no);

/// Parses every record of a stream. Blank lines are skipped; question ids
/// must be unique across the stream.
std::vector<RetrievalRun>
parse_runs(std::istream& in);

std::vector<RetrievalRun>
parse_run_file(const std::filesystem::path& path);

/// Checks the RetrievalRun invariants; throws ValidationError.
void
validate_run(const RetrievalRun& run);

/// One-line JSON serialization (no trailing newline).
std::string
serialize_run(const RetrievalRun& run);

void
write_runs(std::ostream& out, std::span<const RetrievalRun> runs);

void
write_run_file(const std::filesystem::path& path, std::span<const RetrievalRun> runs);

/// Positives among the first kTotalPositivesDepth candidates in current order.
int
count_leading_positives(const RetrievalRun& run);

}  // namespace xlrank
