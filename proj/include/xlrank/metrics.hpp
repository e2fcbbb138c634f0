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
// Retrieval and answer metrics.
//
//   Positives@K  positives among the first K candidates
//   Recall@K     100 * Positives@K / total_positives, where total_positives
//                was frozen from the retriever's top 50; runs without any
//                positive there are excluded from recall averages
//   MRR          reciprocal rank of the first positive whose language is the
//                question's (Same), differs from it (Cross), or any (All)
//   token F1     multiset token overlap of predicted vs gold answers

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "xlrank/types.hpp"

namespace xlrank {

enum class MrrSubset {
    kSame,
    kCross,
    kAll,
};

enum class MrrMode {
    /// 1/rank of the highest-ranked qualifying positive.
    kFirst,
    /// Mean of 1/rank over every qualifying positive.
    kMeanAll,
};

MrrMode
parse_mrr_mode(std::string_view name);

int
positives_at_k(const RetrievalRun& run, std::size_t k);

/// nullopt when run.total_positives == 0 (excluded, not an error).
std::optional<double>
recall_at_k(const RetrievalRun& run, std::size_t k);

/// 0 when no positive qualifies. Candidate and question languages must be
/// resolved (see resolve_languages).
double
mrr(const RetrievalRun& run, MrrSubset subset, MrrMode mode = MrrMode::kFirst);

/// Fills "und" question and passage languages with detect_language.
RetrievalRun
resolve_languages(RetrievalRun run);

/// True when the question and every positive candidate have a language.
bool
languages_resolved(const RetrievalRun& run);

struct AnswerPair {
    std::string predicted;
    std::vector<std::string> gold;
};

/// Max over gold strings of the token-multiset F1. Both sides empty after
/// tokenization scores 1, exactly one side empty scores 0.
double
token_f1(const AnswerPair& pair);

struct EvalOptions {
    std::vector<int> ks{5, 15};
    MrrMode mrr_mode = MrrMode::kFirst;
};

struct RunMetrics {
    std::string question_id;
    LanguageCode lang;
    std::map<int, int> positives_at;
    /// Empty when the run is excluded from recall.
    std::map<int, double> recall_at;
    double mrr_same = 0.0;
    double mrr_cross = 0.0;
};

RunMetrics
evaluate_run(const RetrievalRun& run, const EvalOptions& options);

struct LanguageMetrics {
    std::map<int, double> positives_at;
    /// Empty when every run of the language was excluded from recall.
    std::map<int, double> recall_at;
    double mrr_same = 0.0;
    double mrr_cross = 0.0;
    std::size_t n_questions = 0;
    std::size_t n_recall_questions = 0;
};

struct MetricsReport {
    std::vector<int> ks;
    std::map<LanguageCode, LanguageMetrics> per_language;
};

/// Per-language arithmetic means, folded in input order.
MetricsReport
aggregate(std::span<const RunMetrics> runs, std::span<const int> ks);

/// A table row: language -> metric name -> value. Metric names are
/// "P@<k>", "R@<k>", "MRR-Same" and "MRR-Cross".
struct MetricRow {
    std::string label;
    std::map<std::string, std::map<std::string, double>> values;
};

MetricRow
to_metric_row(const MetricsReport& report, std::string label);

/// Element-wise b - a. Throws ValidationError unless both rows carry the
/// same languages and metrics.
MetricRow
gain(const MetricRow& a, const MetricRow& b, std::string label = "Gain");

/// Signed, one decimal: +3.9, -4.5, +0.0.
std::string
format_gain(double value);

}  // namespace xlrank
