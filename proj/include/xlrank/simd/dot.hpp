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

// Batched inner products of one float query against a block of float rows.
//
// Every kernel computes, for each row r,
//
//     out[r] = ((0 + q[0]*x[r][0]) + q[1]*x[r][1]) + ... + q[d-1]*x[r][d-1]
//
// in double precision, strictly left to right. Vector kernels parallelize
// across rows (one lane per row), never within a row, so all kernels give
// bit-identical results. A float*float product is exact in double, which
// also makes fused multiply-add rounding identical to mul-then-add.

#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace xlrank::simd {

enum class Kernel {
    kScalar,
    kAvx2,
    kNeon,
};

std::string_view
kernel_name(Kernel kernel);

/// Compiled in and supported by the running CPU.
bool
kernel_available(Kernel kernel);

std::vector<Kernel>
available_kernels();

/// Widest available kernel.
Kernel
best_kernel();

/// out[r] = <query, rows[r*dim .. r*dim+dim)> for r in [0, out.size()).
/// Requires query.size() == dim and rows.size() == out.size() * dim.
/// Throws PreconditionError if the kernel is unavailable or sizes disagree.
void
inner_products(Kernel kernel, std::span<const float> query, std::span<const float> rows,
               std::size_t dim, std::span<double> out);

namespace detail {

void
inner_products_scalar(const float* query, const float* rows, std::size_t dim, std::size_t n,
                      double* out);

#if defined(XLRANK_HAVE_AVX2)
void
inner_products_avx2(const float* query, const float* rows, std::size_t dim, std::size_t n,
                    double* out);
#endif

#if defined(XLRANK_HAVE_NEON)
void
inner_products_neon(const float* query, const float* rows, std::size_t dim, std::size_t n,
                    double* out);
#endif

}  // namespace detail

}  // namespace xlrank::simd
