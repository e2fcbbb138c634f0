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

#include "xlrank/embedding.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <string_view>
#include <unordered_set>

#include "xlrank/errors.hpp"

namespace xlrank {

namespace {

constexpr char kMagic[4] = {'X', 'L', 'E', 'M'};
constexpr std::uint32_t kFormatVersion = 1;

class ByteReader {
 public:
    explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {
    }

    std::size_t
    offset() const noexcept {
        return pos_;
    }

    std::uint64_t
    read_uint(std::size_t width, const char* what) {
        need(width, what);
        std::uint64_t value = 0;
        for (std::size_t i = 0; i < width; ++i) {
            value |= static_cast<std::uint64_t>(bytes_[pos_ + i]) << (8 * i);
        }
        pos_ += width;
        return value;
    }

    float
    read_f32(const char* what) {
        return std::bit_cast<float>(static_cast<std::uint32_t>(read_uint(4, what)));
    }

    std::string
    read_string(std::size_t length, const char* what) {
        need(length, what);
        std::string out(reinterpret_cast<const char*>(bytes_.data() + pos_), length);
        pos_ += length;
        return out;
    }

    void
    need(std::size_t n, const char* what) const {
        if (bytes_.size() - pos_ < n) {
            throw FormatError("offset " + std::to_string(pos_) + ": truncated " + what +
                              " (need " + std::to_string(n) + " bytes, " +
                              std::to_string(bytes_.size() - pos_) + " left)");
        }
    }

 private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

void
put_uint(std::vector<std::uint8_t>& out, std::uint64_t value, std::size_t width) {
    for (std::size_t i = 0; i < width; ++i) {
        out.push_back(static_cast<std::uint8_t>(value >> (8 * i)));
    }
}

float
parse_float(std::string_view text, std::size_t line_no) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '+')) {
        text.remove_prefix(1);
    }
    while (!text.empty() && (text.back() == ' ' || text.back() == '\r')) {
        text.remove_suffix(1);
    }
    float value = 0.0F;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw FormatError("line " + std::to_string(line_no) + ": invalid value '" +
                          std::string(text) + "'");
    }
    return value;
}

}  // namespace

EmbeddingMatrix::EmbeddingMatrix(std::vector<std::string> ids, std::size_t dim,
                                 std::vector<float> values)
    : ids_(std::move(ids)), dim_(dim), values_(std::move(values)) {
    if (dim_ == 0) {
        throw ValidationError("embedding dimension must be positive");
    }
    if (values_.size() != ids_.size() * dim_) {
        throw ValidationError("embedding matrix has " + std::to_string(values_.size()) +
                              " values for " + std::to_string(ids_.size()) + " rows of dim " +
                              std::to_string(dim_));
    }
    std::unordered_set<std::string_view> seen;
    for (const auto& id : ids_) {
        if (!seen.insert(id).second) {
            throw ValidationError("duplicate embedding id '" + id + "'");
        }
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw ValidationError("non-finite value in row '" + ids_[i / dim_] + "'");
        }
    }
}

EmbeddingMatrix
parse_matrix_binary(std::span<const std::uint8_t> bytes) {
    ByteReader reader(bytes);
    reader.need(4, "magic");
    if (std::memcmp(bytes.data(), kMagic, 4) != 0) {
        throw FormatError("offset 0: bad magic, expected \"XLEM\"");
    }
    reader.read_uint(4, "magic");
    const std::size_t version_at = reader.offset();
    const auto version = reader.read_uint(4, "version");
    if (version != kFormatVersion) {
        throw FormatError("offset " + std::to_string(version_at) + ": unsupported version " +
                          std::to_string(version));
    }
    const auto rows = reader.read_uint(8, "row count");
    const std::size_t dim_at = reader.offset();
    const auto dim = reader.read_uint(4, "dim");
    if (dim == 0) {
        throw FormatError("offset " + std::to_string(dim_at) + ": dim must be positive");
    }
    // Each row needs at least 2 + 4*dim bytes; reject absurd headers early.
    const std::size_t min_row = 2 + 4 * dim;
    if (rows > (bytes.size() - reader.offset()) / min_row) {
        throw FormatError("offset " + std::to_string(reader.offset()) + ": header declares " +
                          std::to_string(rows) + " rows of dim " + std::to_string(dim) +
                          " but only " + std::to_string(bytes.size() - reader.offset()) +
                          " bytes follow");
    }

    std::vector<std::string> ids;
    std::vector<float> values;
    ids.reserve(rows);
    values.reserve(rows * dim);
    for (std::uint64_t r = 0; r < rows; ++r) {
        const auto id_len = reader.read_uint(2, "id length");
        ids.push_back(reader.read_string(id_len, "id"));
        for (std::uint64_t d = 0; d < dim; ++d) {
            values.push_back(reader.read_f32("row values"));
        }
    }
    if (reader.offset() != bytes.size()) {
        throw FormatError("offset " + std::to_string(reader.offset()) + ": " +
                          std::to_string(bytes.size() - reader.offset()) +
                          " trailing bytes after last row");
    }
    return EmbeddingMatrix(std::move(ids), dim, std::move(values));
}

EmbeddingMatrix
parse_matrix_text(std::string_view text) {
    std::size_t line_no = 0;
    std::size_t dim = 0;
    std::vector<std::string> ids;
    std::vector<float> values;

    while (!text.empty()) {
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line_no == 1) {
            if (!line.starts_with("dim=")) {
                throw FormatError("line 1: expected header 'dim=<d>'");
            }
            const auto digits = line.substr(4);
            auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), dim);
            if (ec != std::errc() || ptr != digits.data() + digits.size() || dim == 0) {
                throw FormatError("line 1: invalid dimension '" + std::string(digits) + "'");
            }
            continue;
        }
        if (line.empty()) {
            continue;
        }
        const auto tab = line.find('\t');
        if (tab == std::string_view::npos) {
            throw FormatError("line " + std::to_string(line_no) + ": missing tab after id");
        }
        ids.emplace_back(line.substr(0, tab));
        std::string_view rest = line.substr(tab + 1);
        std::size_t count = 0;
        while (true) {
            const auto comma = rest.find(',');
            values.push_back(parse_float(rest.substr(0, comma), line_no));
            ++count;
            if (comma == std::string_view::npos) {
                break;
            }
            rest = rest.substr(comma + 1);
        }
        if (count != dim) {
            throw FormatError("line " + std::to_string(line_no) + ": expected " +
                              std::to_string(dim) + " values, got " + std::to_string(count));
        }
    }
    if (line_no == 0) {
        throw FormatError("line 1: empty file, expected header 'dim=<d>'");
    }
    return EmbeddingMatrix(std::move(ids), dim, std::move(values));
}

EmbeddingMatrix
load_matrix(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw PreconditionError("cannot open matrix file '" + path.string() + "'");
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (bytes.size() >= 4 && std::memcmp(bytes.data(), kMagic, 4) == 0) {
        return parse_matrix_binary(bytes);
    }
    return parse_matrix_text(
        std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

std::vector<std::uint8_t>
encode_matrix_binary(const EmbeddingMatrix& matrix) {
    std::vector<std::uint8_t> out(kMagic, kMagic + 4);
    put_uint(out, kFormatVersion, 4);
    put_uint(out, matrix.rows(), 8);
    put_uint(out, matrix.dim(), 4);
    for (std::size_t r = 0; r < matrix.rows(); ++r) {
        const std::string& id = matrix.ids()[r];
        if (id.size() > std::numeric_limits<std::uint16_t>::max()) {
            throw ValidationError("id '" + id.substr(0, 32) + "...' is longer than 65535 bytes");
        }
        put_uint(out, id.size(), 2);
        out.insert(out.end(), id.begin(), id.end());
        for (float v : matrix.row(r)) {
            put_uint(out, std::bit_cast<std::uint32_t>(v), 4);
        }
    }
    return out;
}

void
save_matrix_binary(const EmbeddingMatrix& matrix, const std::filesystem::path& path) {
    const auto bytes = encode_matrix_binary(matrix);
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw PreconditionError("cannot write matrix file '" + path.string() + "'");
    }
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
}

void
save_matrix_text(const EmbeddingMatrix& matrix, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw PreconditionError("cannot write matrix file '" + path.string() + "'");
    }
    out << "dim=" << matrix.dim() << '\n';
    char buffer[64];
    for (std::size_t r = 0; r < matrix.rows(); ++r) {
        out << matrix.ids()[r] << '\t';
        const auto row = matrix.row(r);
        for (std::size_t d = 0; d < row.size(); ++d) {
            auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), row[d]);
            (void)ec;
            if (d > 0) {
                out << ',';
            }
            out.write(buffer, ptr - buffer);
        }
        out << '\n';
    }
}

}  // namespace xlrank
