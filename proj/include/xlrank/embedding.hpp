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

// Embedding matrices and their two on-disk forms.
//
// Binary (little-endian):
//   "XLEM" | version u32 (=1) | rows u64 | dim u32 |
//   rows x ( id_len u16 | id bytes (UTF-8) | dim x f32 )
//
// Text:
//   dim=<d>
//   <id>\t<v1>,<v2>,...,<vd>

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace xlrank {

inline constexpr std::size_t kPassageEmbeddingDim = 768;

class EmbeddingMatrix {
 public:
    EmbeddingMatrix() = default;

    /// Throws ValidationError on duplicate ids, non-finite values, or when
    /// values.size() != ids.size() * dim.
    EmbeddingMatrix(std::vector<std::string> ids, std::size_t dim, std::vector<float> values);

    std::size_t
    rows() const noexcept {
        return ids_.size();
    }

    std::size_t
    dim() const noexcept {
        return dim_;
    }

    const std::vector<std::string>&
    ids() const noexcept {
        return ids_;
    }

    std::span<const float>
    row(std::size_t i) const noexcept {
        return {values_.data() + i * dim_, dim_};
    }

    /// Row-major storage, rows() * dim() values.
    std::span<const float>
    values() const noexcept {
        return values_;
    }

 private:
    std::vector<std::string> ids_;
    std::size_t dim_ = 0;
    std::vector<float> values_;
};

/// Loads either format; binary is recognized by its magic bytes.
/// Throws FormatError (naming the byte offset or line) on layout errors
/// and ValidationError on duplicate ids.
EmbeddingMatrix
load_matrix(const std::filesystem::path& path);

EmbeddingMatrix
parse_matrix_binary(std::span<const std::uint8_t> bytes);

EmbeddingMatrix
parse_matrix_text(std::string_view text);

std::vector<std::uint8_t>
encode_matrix_binary(const EmbeddingMatrix& matrix);

void
save_matrix_binary(const EmbeddingMatrix& matrix, const std::filesystem::path& path);

void
save_matrix_text(const EmbeddingMatrix& matrix, const std::filesystem::path& path);

}  // namespace xlrank
