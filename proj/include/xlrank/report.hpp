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
#pragma once

#include <optional>
#include <span>
#include <string>

#include "xlrank/metrics.hpp"

namespace xlrank {

/// Positives and MRR: up to 4 significant digits (0.226, 0.0006, 1.135).
std::string
format_decimal(double value);

/// Recall in percent: two decimals, a trailing zero dropped (12.1, 8.02).
std::string
format_percent(double value);

/// Plain-text tables with languages as column groups and one row per
/// system: a Positives@K table, a Recall@K table and an MRR Same/Cross
/// table. The optional gain row is rendered with format_gain.
std::string
render_tables(std::span<const MetricRow> rows, std::span<const int> ks,
              const std::optional<MetricRow>& gain_row = std::nullopt);

/// One JSON record per language per metric:
/// {"system", "lang", "metric", "value", "n"}. Recall records use the
/// recall question count for "n".
std::string
render_machine_readable(const MetricsReport& report, const std::string& system);

}  // namespace xlrank
