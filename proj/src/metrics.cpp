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
#include "xlrank/metrics.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <unordered_map>

#include "xlrank/errors.hpp"
#include "xlrank/tokenizer.hpp"

namespace xlrank {

namespace {

bool
qualifies(const RetrievalRun& run, const Candidate& cand, MrrSubset subset) {
    switch (subset) {
        case MrrSubset::kSame:
            return cand.passage.lang == run.question.lang;
        case MrrSubset::kCross:
            return cand.passage.lang != run.question.lang;
        case MrrSubset::kAll:
            return true;
    }
    return false;
}

double
f1_single(const TokenSequence& predicted, const TokenSequence& gold) {
    if (predicted.empty() && gold.empty()) {
        return 1.0;
    }
    if (predicted.empty() || gold.empty()) {
        return 0.0;
    }
    std::unordered_map<std::string_view, long> counts;
    for (const auto& t : gold) {
        ++counts[t];
    }
    long overlap = 0;
    for (const auto& t : predicted) {
        auto it = counts.find(t);
        if (it != counts.end() && it->second > 0) {
            --it->second;
            ++overlap;
        }
    }
    if (overlap == 0) {
        return 0.0;
    }
    const double precision = static_cast<double>(overlap) / static_cast<double>(predicted.size());
    const double recall = static_cast<double>(overlap) / static_cast<double>(gold.size());
    return 2.0 * precision * recall / (precision + recall);
}

}  // namespace

MrrMode
parse_mrr_mode(std::string_view name) {
    if (name == "first") {
        return MrrMode::kFirst;
    }
    if (name == "mean_all") {
        return MrrMode::kMeanAll;
    }
    throw ValidationError("unknown mrr mode '" + std::string(name) + "'");
}

int
positives_at_k(const RetrievalRun& run, std::size_t k) {
    const std::size_t depth = std::min(k, run.candidates.size());
    int count = 0;
    for (std::size_t i = 0; i < depth; ++i) {
        count += run.candidates[i].is_positive ? 1 : 0;
    }
    return count;
}

std::optional<double>
recall_at_k(const RetrievalRun& run, std::size_t k) {
    if (run.total_positives == 0) {
        return std::nullopt;
    }
    return 100.0 * positives_at_k(run, k) / run.total_positives;
}

double
mrr(const RetrievalRun& run, MrrSubset subset, MrrMode mode) {
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < run.candidates.size(); ++i) {
        const Candidate& cand = run.candidates[i];
        if (!cand.is_positive || !qualifies(run, cand, subset)) {
            continue;
        }
        const double reciprocal = 1.0 / static_cast<double>(i + 1);
        if (mode == MrrMode::kFirst) {
            return reciprocal;
        }
        sum += reciprocal;
        ++count;
    }
    return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

RetrievalRun
resolve_languages(RetrievalRun run) {
    if (run.question.lang.is_undetermined()) {
        run.question.lang = detect_language(run.question.text);
    }
    for (Candidate& cand : run.candidates) {
        if (cand.passage.lang.is_undetermined()) {
            cand.passage.lang = detect_language(cand.passage.text);
        }
    }
    return run;
}

bool
languages_resolved(const RetrievalRun& run) {
    if (run.question.lang.is_undetermined()) {
        return false;
    }
    return std::none_of(run.candidates.begin(), run.candidates.end(), [](const Candidate& c) {
        return c.is_positive && c.passage.lang.is_undetermined();
    });
}

double
token_f1(const AnswerPair& pair) {
    const TokenSequence predicted = tokenize(pair.predicted);
    double best = 0.0;
    for (const auto& gold : pair.gold) {
        best = std::max(best, f1_single(predicted, tokenize(gold)));
    }
    return best;
}

RunMetrics
evaluate_run(const RetrievalRun& run, const EvalOptions& options) {
    RunMetrics out;
    out.question_id = run.question.id;
    out.lang = run.question.lang;
    for (int k : options.ks) {
        if (k < 1) {
            throw PreconditionError("metric cutoff k must be at least 1");
        }
        const auto depth = static_cast<std::size_t>(k);
        out.positives_at[k] = positives_at_k(run, depth);
        if (auto recall = recall_at_k(run, depth)) {
            out.recall_at[k] = *recall;
        }
    }
    out.mrr_same = mrr(run, MrrSubset::kSame, options.mrr_mode);
    out.mrr_cross = mrr(run, MrrSubset::kCross, options.mrr_mode);
    return out;
}

MetricsReport
aggregate(std::span<const RunMetrics> runs, std::span<const int> ks) {
    struct Sums {
        std::map<int, double> positives;
        std::map<int, double> recall;
        double mrr_same = 0.0;
        double mrr_cross = 0.0;
        std::size_t n = 0;
        std::size_t n_recall = 0;
    };
    std::map<LanguageCode, Sums> sums;
    for (const RunMetrics& run : runs) {
        Sums& s = sums[run.lang];
        ++s.n;
        for (int k : ks) {
            auto it = run.positives_at.find(k);
            s.positives[k] += it == run.positives_at.end() ? 0.0 : it->second;
        }
        if (!run.recall_at.empty()) {
            ++s.n_recall;
            for (int k : ks) {
                auto it = run.recall_at.find(k);
                s.recall[k] += it == run.recall_at.end() ? 0.0 : it->second;
            }
        }
        s.mrr_same += run.mrr_same;
        s.mrr_cross += run.mrr_cross;
    }

    MetricsReport report;
    report.ks.assign(ks.begin(), ks.end());
    for (const auto& [lang, s] : sums) {
        LanguageMetrics m;
        m.n_questions = s.n;
        m.n_recall_questions = s.n_recall;
        const auto n = static_cast<double>(s.n);
        for (int k : ks) {
            m.positives_at[k] = s.positives.at(k) / n;
            if (s.n_recall > 0) {
                m.recall_at[k] = s.recall.at(k) / static_cast<double>(s.n_recall);
            }
        }
        m.mrr_same = s.mrr_same / n;
        m.mrr_cross = s.mrr_cross / n;
        report.per_language.emplace(lang, std::move(m));
    }
    return report;
}

MetricRow
to_metric_row(const MetricsReport& report, std::string label) {
    MetricRow row;
    row.label = std::move(label);
    for (const auto& [lang, m] : report.per_language) {
        auto& cells = row.values[lang.str()];
        for (const auto& [k, value] : m.positives_at) {
            cells["P@" + std::to_string(k)] = value;
        }
        for (const auto& [k, value] : m.recall_at) {
            cells["R@" + std::to_string(k)] = value;
        }
        cells["MRR-Same"] = m.mrr_same;
        cells["MRR-Cross"] = m.mrr_cross;
    }
    return row;
}

MetricRow
gain(const MetricRow& a, const MetricRow& b, std::string label) {
    MetricRow out;
    out.label = std::move(label);
    if (a.values.size() != b.values.size()) {
        throw ValidationError("gain: rows '" + a.label + "' and '" + b.label +
                              "' cover different languages");
    }
    for (const auto& [lang, cells_a] : a.values) {
        auto it = b.values.find(lang);
        if (it == b.values.end()) {
            throw ValidationError("gain: language '" + lang + "' missing from row '" + b.label +
                                  "'");
        }
        const auto& cells_b = it->second;
        if (cells_a.size() != cells_b.size()) {
            throw ValidationError("gain: rows disagree on metrics for language '" + lang + "'");
        }
        for (const auto& [metric, value_a] : cells_a) {
            auto cell = cells_b.find(metric);
            if (cell == cells_b.end()) {
                throw ValidationError("gain: metric '" + metric + "' for '" + lang +
                                      "' missing from row '" + b.label + "'");
            }
            out.values[lang][metric] = cell->second - value_a;
        }
    }
    return out;
}

std::string
format_gain(double value) {
    return fmt::format("{:+.1f}", value);
}

}  // namespace xlrank
