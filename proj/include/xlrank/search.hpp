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

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "xlrank/embedding.hpp"
#include "xlrank/simd/dot.hpp"

namespace xlrank {

struct SearchHit {
    std::string id;
    double score = 0.0;

    bool
    operator==(const SearchHit&) const = default;
};

/// Hits ordered by score descending, ties by ascending id (byte order).
struct SearchResult {
    std::vector<SearchHit> entries;

    bool
    operator==(const SearchResult&) const = default;
};

struct SearchOptions {
    std::size_t workers = 1;
    simd::Kernel kernel = simd::best_kernel();
};

/// Exact maximum-inner-product search. Rows are scanned in contiguous
/// slices (one per worker) with the selected SIMD kernel, then the k best
/// are picked by partial selection under the (score desc, id asc) order.
/// Output is identical for every kernel and worker count, and identical to
/// full_sort_search. Throws PreconditionError on k == 0, a query of the
/// wrong length, or non-finite query values.
SearchResult
top_k(std::span<const float> query, const EmbeddingMatrix& matrix, std::size_t k,
      const SearchOptions& options = {});

/// Reference: scalar scores for every row, stable full sort, truncate to k.
SearchResult
full_sort_search(std::span<const float> query, const EmbeddingMatrix& matrix, std::size_t k);

}  // namespace xlrank
