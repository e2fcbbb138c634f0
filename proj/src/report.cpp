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
#include "xlrank/report.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <set>
#include <vector>

#include "json_util.hpp"

namespace xlrank {

namespace {

enum class CellStyle { kDecimal, kPercent };

struct Column {
    std::string lang;
    std::string metric;
    std::string header;
};

std::string
render_table(const std::string& title, std::span<const MetricRow> rows,
             const std::vector<std::string>& langs, const std::vector<std::string>& metrics,
             const std::vector<std::string>& headers, CellStyle style,
             const std::optional<MetricRow>& gain_row) {
    constexpr std::size_t kCell = 10;
    std::size_t label_width = 8;
    for (const auto& row : rows) {
        label_width = std::max(label_width, row.label.size() + 2);
    }
    if (gain_row) {
        label_width = std::max(label_width, gain_row->label.size() + 2);
    }

    auto end_line = [](std::string line) {
        while (!line.empty() && line.back() == ' ') {
            line.pop_back();
        }
        return line + "\n";
    };
    std::string out = title + "\n";
    std::string line = fmt::format("{:<{}}", "", label_width);
    for (const auto& lang : langs) {
        line += fmt::format("{:<{}}", lang, kCell * metrics.size());
    }
    out += end_line(line);
    line = fmt::format("{:<{}}", "", label_width);
    for (std::size_t l = 0; l < langs.size(); ++l) {
        for (const auto& header : headers) {
            line += fmt::format("{:<{}}", header, kCell);
        }
    }
    out += end_line(line);

    auto emit = [&](const MetricRow& row, bool is_gain) {
        std::string line = fmt::format("{:<{}}", row.label, label_width);
        for (const auto& lang : langs) {
            const auto lang_it = row.values.find(lang);
            for (const auto& metric : metrics) {
                std::string cell = "-";
                if (lang_it != row.values.end()) {
                    if (auto it = lang_it->second.find(metric); it != lang_it->second.end()) {
                        if (is_gain) {
                            cell = format_gain(it->second);
                        } else if (style == CellStyle::kPercent) {
                            cell = format_percent(it->second);
                        } else {
                            cell = format_decimal(it->second);
                        }
                    }
                }
                line += fmt::format("{:<{}}", cell, kCell);
            }
        }
        out += end_line(std::move(line));
    };
    for (const auto& row : rows) {
        emit(row, false);
    }
    if (gain_row) {
        emit(*gain_row, true);
    }
    return out;
}

}  // namespace

std::string
format_decimal(double value) {
    return fmt::format("{:.4g}", value);
}

std::string
format_percent(double value) {
    std::string out = fmt::format("{:.2f}", value);
    if (out.size() >= 2 && out.back() == '0') {
        out.pop_back();
    }
    return out;
}

std::string
render_tables(std::span<const MetricRow> rows, std::span<const int> ks,
              const std::optional<MetricRow>& gain_row) {
    std::set<std::string> lang_set;
    for (const auto& row : rows) {
        for (const auto& [lang, cells] : row.values) {
            lang_set.insert(lang);
        }
    }
    const std::vector<std::string> langs(lang_set.begin(), lang_set.end());

    std::vector<std::string> p_metrics;
    std::vector<std::string> p_headers;
    std::vector<std::string> r_metrics;
    std::vector<std::string> r_headers;
    for (int k : ks) {
        p_metrics.push_back("P@" + std::to_string(k));
        r_metrics.push_back("R@" + std::to_string(k));
    }
    p_headers = p_metrics;
    r_headers = r_metrics;

    std::string out;
    out += render_table("Positives@K", rows, langs, p_metrics, p_headers, CellStyle::kDecimal,
                        gain_row);
    out += "\n";
    out += render_table("Recall@K (%)", rows, langs, r_metrics, r_headers, CellStyle::kPercent,
                        gain_row);
    out += "\n";
    out += render_table("MRR", rows, langs, {"MRR-Same", "MRR-Cross"}, {"Same", "Cross"},
                        CellStyle::kDecimal, gain_row);
    return out;
}

std::string
render_machine_readable(const MetricsReport& report, const std::string& system) {
    std::string out;
    auto emit = [&](const LanguageCode& lang, const std::string& metric, double value,
                    std::size_t n) {
        detail::ordered_json record;
        record["system"] = system;
        record["lang"] = lang.str();
        record["metric"] = metric;
        record["value"] = value;
        record["n"] = n;
        out += record.dump() + "\n";
    };
    for (const auto& [lang, m] : report.per_language) {
        for (const auto& [k, value] : m.positives_at) {
            emit(lang, "P@" + std::to_string(k), value, m.n_questions);
        }
        for (const auto& [k, value] : m.recall_at) {
            emit(lang, "R@" + std::to_string(k), value, m.n_recall_questions);
        }
        emit(lang, "MRR-Same", m.mrr_same, m.n_questions);
        emit(lang, "MRR-Cross", m.mrr_cross, m.n_questions);
    }
    return out;
}

}  // namespace xlrank
