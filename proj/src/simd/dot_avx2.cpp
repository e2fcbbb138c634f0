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
// Built with -mavx2; only reached after a runtime CPU check.

#include <immintrin.h>

#include <vector>

#include "xlrank/simd/dot.hpp"

namespace xlrank::simd::detail {

namespace {

constexpr std::size_t kRowsPerBlock = 4;

inline __m256d
step(__m256d acc, double q, __m256d column) {
    return _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(q), column));
}

}  // namespace

void
inner_products_avx2(const float* query, const float* rows, std::size_t dim, std::size_t n,
                    double* out) {
    std::vector<double> q(query, query + dim);

    std::size_t r = 0;
    for (; r + kRowsPerBlock <= n; r += kRowsPerBlock) {
        const float* p0 = rows + (r + 0) * dim;
        const float* p1 = rows + (r + 1) * dim;
        const float* p2 = rows + (r + 2) * dim;
        const float* p3 = rows + (r + 3) * dim;
        // Lane i accumulates row r+i.
        __m256d acc = _mm256_setzero_pd();

        std::size_t d = 0;
        for (; d + 4 <= dim; d += 4) {
            const __m256d a0 = _mm256_cvtps_pd(_mm_loadu_ps(p0 + d));
            const __m256d a1 = _mm256_cvtps_pd(_mm_loadu_ps(p1 + d));
            const __m256d a2 = _mm256_cvtps_pd(_mm_loadu_ps(p2 + d));
            const __m256d a3 = _mm256_cvtps_pd(_mm_loadu_ps(p3 + d));

            // 4x4 transpose: c_j holds element d+j of the four rows.
            const __m256d t0 = _mm256_unpacklo_pd(a0, a1);
            const __m256d t1 = _mm256_unpackhi_pd(a0, a1);
            const __m256d t2 = _mm256_unpacklo_pd(a2, a3);
            const __m256d t3 = _mm256_unpackhi_pd(a2, a3);
            const __m256d c0 = _mm256_permute2f128_pd(t0, t2, 0x20);
            const __m256d c1 = _mm256_permute2f128_pd(t1, t3, 0x20);
            const __m256d c2 = _mm256_permute2f128_pd(t0, t2, 0x31);
            const __m256d c3 = _mm256_permute2f128_pd(t1, t3, 0x31);

            acc = step(acc, q[d + 0], c0);
            acc = step(acc, q[d + 1], c1);
            acc = step(acc, q[d + 2], c2);
            acc = step(acc, q[d + 3], c3);
        }
        for (; d < dim; ++d) {
            const __m256d column = _mm256_set_pd(p3[d], p2[d], p1[d], p0[d]);
            acc = step(acc, q[d], column);
        }
        _mm256_storeu_pd(out + r, acc);
    }

    if (r < n) {
        inner_products_scalar(query, rows + r * dim, dim, n - r, out + r);
    }
}

}  // namespace xlrank::simd::detail
