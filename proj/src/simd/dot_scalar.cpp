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
#include "xlrank/simd/dot.hpp"

namespace xlrank::simd::detail {

void
inner_products_scalar(const float* query, const float* rows, std::size_t dim, std::size_t n,
                      double* out) {
    for (std::size_t r = 0; r < n; ++r) {
        const float* row = rows + r * dim;
        double acc = 0.0;
        for (std::size_t d = 0; d < dim; ++d) {
            acc += static_cast<double>(query[d]) * static_cast<double>(row[d]);
        }
        out[r] = acc;
    }
}

}  // namespace xlrank::simd::detail
