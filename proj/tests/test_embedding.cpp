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
#include <gtest/gtest.h>

#include <cstring>
#include <random>

#include "support.hpp"
#include "xlrank/embedding.hpp"
#include "xlrank/errors.hpp"

namespace xlrank {
namespace {

std::string
message_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

EmbeddingMatrix
random_matrix(std::size_t rows, std::size_t dim, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<float> dist;
    std::vector<std::string> ids;
    std::vector<float> values;
    for (std::size_t r = 0; r < rows; ++r) {
        ids.push_back("doc-" + std::to_string(r) + (r % 3 == 0 ? "-문서" : ""));
        for (std::size_t d = 0; d < dim; ++d) {
            values.push_back(dist(rng));
        }
    }
    return EmbeddingMatrix(std::move(ids), dim, std::move(values));
}

TEST(TextMatrix, TwoRowsOfFour) {
    const auto m = parse_matrix_text("dim=4\na\t1,2,3,4\nb\t-1.5,0,0.25,1e-3\n");
    EXPECT_EQ(m.rows(), 2U);
    EXPECT_EQ(m.dim(), 4U);
    EXPECT_EQ(m.ids(), (std::vector<std::string>{"a", "b"}));
    EXPECT_FLOAT_EQ(m.row(1)[0], -1.5F);
    EXPECT_FLOAT_EQ(m.row(1)[3], 1e-3F);
}

TEST(TextMatrix, ShortRowIsFormatError) {
    std::string text = "dim=768\nx\t";
    for (int i = 0; i < 767; ++i) {
        text += (i ? ",0.5" : "0.5");
    }
    text += "\n";
    const std::string message = message_of([&] { parse_matrix_text(text); });
    EXPECT_NE(message.find("line 2"), std::string::npos) << message;
    EXPECT_NE(message.find("expected 768 values, got 767"), std::string::npos) << message;
    EXPECT_THROW(parse_matrix_text(text), FormatError);
}

TEST(TextMatrix, EmptyMatrix) {
    const auto m = parse_matrix_text("dim=768\n");
    EXPECT_EQ(m.rows(), 0U);
    EXPECT_EQ(m.dim(), 768U);
}

TEST(TextMatrix, Errors) {
    EXPECT_THROW(parse_matrix_text(""), FormatError);
    EXPECT_THROW(parse_matrix_text("rows=3\n"), FormatError);
    EXPECT_THROW(parse_matrix_text("dim=0\n"), FormatError);
    EXPECT_THROW(parse_matrix_text("dim=2\na 1,2\n"), FormatError);
    EXPECT_THROW(parse_matrix_text("dim=2\na\t1,x\n"), FormatError);
    EXPECT_THROW(parse_matrix_text("dim=2\na\t1,2\na\t3,4\n"), ValidationError);
    EXPECT_THROW(parse_matrix_text("dim=2\na\t1,inf\n"), ValidationError);
}

TEST(BinaryMatrix, RoundTrip) {
    const auto m = random_matrix(17, 5, 3);
    const auto bytes = encode_matrix_binary(m);
    EXPECT_EQ(bytes.size(), 4 + 4 + 8 + 4 + [&] {
                  std::size_t n = 0;
                  for (const auto& id : m.ids()) n += 2 + id.size() + 4 * 5;
                  return n;
              }());
    const auto back = parse_matrix_binary(bytes);
    EXPECT_EQ(back.ids(), m.ids());
    ASSERT_EQ(back.values().size(), m.values().size());
    EXPECT_EQ(0, std::memcmp(back.values().data(), m.values().data(), 4 * m.values().size()));
}

TEST(BinaryMatrix, LittleEndianHeader) {
    const EmbeddingMatrix m({"ab"}, 1, {1.0F});
    const auto bytes = encode_matrix_binary(m);
    const std::vector<std::uint8_t> expected = {'X', 'L', 'E', 'M', 1, 0, 0, 0, 1, 0, 0, 0, 0, 0,
                                                0,   0,   1,   0,   0, 0, 2, 0, 'a', 'b',
                                                0x00, 0x00, 0x80, 0x3F};
    EXPECT_EQ(bytes, expected);
}

TEST(BinaryMatrix, ErrorsNameOffset) {
    const auto good = encode_matrix_binary(random_matrix(3, 4, 1));

    auto bad_magic = good;
    bad_magic[1] = 'X';
    EXPECT_THROW(parse_matrix_binary(bad_magic), FormatError);

    auto bad_version = good;
    bad_version[4] = 2;
    EXPECT_NE(message_of([&] { parse_matrix_binary(bad_version); }).find("offset 4"),
              std::string::npos);

    auto truncated = good;
    truncated.resize(good.size() - 3);
    const auto message = message_of([&] { parse_matrix_binary(truncated); });
    EXPECT_NE(message.find("offset"), std::string::npos) << message;
    EXPECT_THROW(parse_matrix_binary(truncated), FormatError);

    auto trailing = good;
    trailing.push_back(0);
    EXPECT_NE(message_of([&] { parse_matrix_binary(trailing); })
                  .find("offset " + std::to_string(good.size())),
              std::string::npos);

    auto huge_rows = good;
    huge_rows[15] = 0x7F;
    EXPECT_THROW(parse_matrix_binary(huge_rows), FormatError);

    EXPECT_THROW(parse_matrix_binary(std::vector<std::uint8_t>{'X', 'L'}), FormatError);
}

TEST(LoadMatrix, DetectsFormat) {
    testing::TempDir dir;
    const auto m = random_matrix(6, 3, 7);
    save_matrix_binary(m, dir / "m.bin");
    save_matrix_text(m, dir / "m.txt");
    const auto from_binary = load_matrix(dir / "m.bin");
    const auto from_text = load_matrix(dir / "m.txt");
    EXPECT_EQ(from_binary.ids(), m.ids());
    EXPECT_EQ(from_text.ids(), m.ids());
    for (std::size_t i = 0; i < m.values().size(); ++i) {
        EXPECT_EQ(from_binary.values()[i], m.values()[i]);
        EXPECT_EQ(from_text.values()[i], m.values()[i]);
    }
    EXPECT_THROW(load_matrix(dir / "missing"), PreconditionError);
}

TEST(EmbeddingMatrix, ConstructorChecks) {
    EXPECT_THROW(EmbeddingMatrix({"a"}, 2, {1.0F}), ValidationError);
    EXPECT_THROW(EmbeddingMatrix({"a"}, 0, {}), ValidationError);
    EXPECT_THROW(EmbeddingMatrix({"a", "a"}, 1, {1.0F, 2.0F}), ValidationError);
}

}  // namespace
}  // namespace xlrank
