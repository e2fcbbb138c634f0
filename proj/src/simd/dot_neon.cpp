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
#include <arm_neon.h>

#include <vector>

#include "xlrank/simd/dot.hpp"

namespace xlrank::simd::detail {

void
inner_products_neon(const float* query, const float* rows, std::size_t dim, std::size_t n,
                    double* out) {
    std::vector<double> q(query, query + dim);

    std::size_t r = 0;
    for (; r + 2 <= n; r += 2) {
        const float* p0 = rows + (r + 0) * dim;
        const float* p1 = rows + (r + 1) * dim;
        // Lane 0 accumulates row r, lane 1 row r+1.
        float64x2_t acc = vdupq_n_f64(0.0);

        std::size_t d = 0;
        for (; d + 4 <= dim; d += 4) {
            const float32x4_t a0 = vld1q_f32(p0 + d);
            const float32x4_t a1 = vld1q_f32(p1 + d);
            const float64x2_t a0_lo = vcvt_f64_f32(vget_low_f32(a0));
            const float64x2_t a0_hi = vcvt_high_f64_f32(a0);
            const float64x2_t a1_lo = vcvt_f64_f32(vget_low_f32(a1));
            const float64x2_t a1_hi = vcvt_high_f64_f32(a1);

            acc = vaddq_f64(acc, vmulq_f64(vdupq_n_f64(q[d + 0]), vzip1q_f64(a0_lo, a1_lo)));
            acc = vaddq_f64(acc, vmulq_f64(vdupq_n_f64(q[d + 1]), vzip2q_f64(a0_lo, a1_lo)));
            acc = vaddq_f64(acc, vmulq_f64(vdupq_n_f64(q[d + 2]), vzip1q_f64(a0_hi, a1_hi)));
            acc = vaddq_f64(acc, vmulq_f64(vdupq_n_f64(q[d + 3]), vzip2q_f64(a0_hi, a1_hi)));
        }
        for (; d < dim; ++d) {
            const double pair[2] = {static_cast<double>(p0[d]), static_cast<double>(p1[d])};
            acc = vaddq_f64(acc, vmulq_f64(vdupq_n_f64(q[d]), vld1q_f64(pair)));
        }
        vst1q_f64(out + r, acc);
    }

    if (r < n) {
        inner_products_scalar(query, rows + r * dim, dim, n - r, out + r);
    }
}

}  // namespace xlrank::simd::detail
