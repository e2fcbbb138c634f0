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
#include <string>

#include "xlrank/errors.hpp"
#include "xlrank/simd/dot.hpp"

namespace xlrank::simd {

std::string_view
kernel_name(Kernel kernel) {
    switch (kernel) {
        case Kernel::kScalar:
            return "scalar";
        case Kernel::kAvx2:
            return "avx2";
        case Kernel::kNeon:
            return "neon";
    }
    return "unknown";
}

bool
kernel_available(Kernel kernel) {
    switch (kernel) {
        case Kernel::kScalar:
            return true;
        case Kernel::kAvx2:
#if defined(XLRANK_HAVE_AVX2)
            return __builtin_cpu_supports("avx2") != 0;
#else
            return false;
#endif
        case Kernel::kNeon:
#if defined(XLRANK_HAVE_NEON)
            return true;
#else
            return false;
#endif
    }
    return false;
}

std::vector<Kernel>
available_kernels() {
    std::vector<Kernel> out;
    for (Kernel k : {Kernel::kScalar, Kernel::kAvx2, Kernel::kNeon}) {
        if (kernel_available(k)) {
            out.push_back(k);
        }
    }
    return out;
}

Kernel
best_kernel() {
    static const Kernel best = [] {
        if (kernel_available(Kernel::kAvx2)) {
            return Kernel::kAvx2;
        }
        if (kernel_available(Kernel::kNeon)) {
            return Kernel::kNeon;
        }
        return Kernel::kScalar;
    }();
    return best;
}

void
inner_products(Kernel kernel, std::span<const float> query, std::span<const float> rows,
               std::size_t dim, std::span<double> out) {
    if (query.size() != dim) {
        throw PreconditionError("query has " + std::to_string(query.size()) +
                                " values, expected " + std::to_string(dim));
    }
    if (rows.size() != out.size() * dim) {
        throw PreconditionError("row block size does not match output size");
    }
    if (!kernel_available(kernel)) {
        throw PreconditionError("kernel '" + std::string(kernel_name(kernel)) +
                                "' is not available on this machine");
    }
    if (out.empty()) {
        return;
    }
    switch (kernel) {
        case Kernel::kScalar:
            detail::inner_products_scalar(query.data(), rows.data(), dim, out.size(), out.data());
            return;
        case Kernel::kAvx2:
#if defined(XLRANK_HAVE_AVX2)
            detail::inner_products_avx2(query.data(), rows.data(), dim, out.size(), out.data());
#endif
            return;
        case Kernel::kNeon:
#if defined(XLRANK_HAVE_NEON)
            detail::inner_products_neon(query.data(), rows.data(), dim, out.size(), out.data());
#endif
            return;
    }
}

}  // namespace xlrank::simd
