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
#include "xlrank/search.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "parallel.hpp"
#include "xlrank/errors.hpp"

namespace xlrank {

namespace {

void
check_query(std::span<const float> query, const EmbeddingMatrix& matrix, std::size_t k) {
    if (k == 0) {
        throw PreconditionError("k must be at least 1");
    }
    if (query.size() != matrix.dim()) {
        throw PreconditionError("query dimension " + std::to_string(query.size()) +
                                " does not match matrix dimension " +
                                std::to_string(matrix.dim()));
    }
    for (float v : query) {
        if (!std::isfinite(v)) {
            throw PreconditionError("query contains a non-finite value");
        }
    }
}

SearchResult
collect(const EmbeddingMatrix& matrix, const std::vector<double>& scores,
        std::span<const std::size_t> order) {
    SearchResult result;
    result.entries.reserve(order.size());
    for (std::size_t row : order) {
        result.entries.push_back({matrix.ids()[row], scores[row]});
    }
    return result;
}

}  // namespace

SearchResult
top_k(std::span<const float> query, const EmbeddingMatrix& matrix, std::size_t k,
      const SearchOptions& options) {
    check_query(query, matrix, k);
    const std::size_t n = matrix.rows();
    const std::size_t dim = matrix.dim();
    std::vector<double> scores(n);

    const std::size_t slices = std::max<std::size_t>(1, std::min(options.workers, n));
    const std::size_t per_slice = n == 0 ? 0 : (n + slices - 1) / slices;
    detail::parallel_for(slices, slices, [&](std::size_t s) {
        const std::size_t begin = std::min(n, s * per_slice);
        const std::size_t end = std::min(n, begin + per_slice);
        simd::inner_products(options.kernel, query,
                             matrix.values().subspan(begin * dim, (end - begin) * dim), dim,
                             std::span<double>(scores).subspan(begin, end - begin));
    });

    const auto& ids = matrix.ids();
    auto better = [&](std::size_t a, std::size_t b) {
        if (scores[a] != scores[b]) {
            return scores[a] > scores[b];
        }
        return ids[a] < ids[b];
    };
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    const std::size_t keep = std::min(k, n);
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep),
                      order.end(), better);
    order.resize(keep);
    return collect(matrix, scores, order);
}

SearchResult
full_sort_search(std::span<const float> query, const EmbeddingMatrix& matrix, std::size_t k) {
    check_query(query, matrix, k);
    const std::size_t n = matrix.rows();
    std::vector<double> scores(n);
    for (std::size_t r = 0; r < n; ++r) {
        const auto row = matrix.row(r);
        double acc = 0.0;
        for (std::size_t d = 0; d < row.size(); ++d) {
            acc += static_cast<double>(query[d]) * static_cast<double>(row[d]);
        }
        scores[r] = acc;
    }
    const auto& ids = matrix.ids();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (scores[a] != scores[b]) {
            return scores[a] > scores[b];
        }
        return ids[a] < ids[b];
    });
    order.resize(std::min(k, n));
    return collect(matrix, scores, order);
}

}  // namespace xlrank
