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

#include <algorithm>
#include <random>

#include "xlrank/errors.hpp"
#include "xlrank/search.hpp"

namespace xlrank {
namespace {

EmbeddingMatrix
make_matrix(const std::vector<std::pair<std::string, std::vector<float>>>& rows) {
    std::vector<std::string> ids;
    std::vector<float> values;
    for (const auto& [id, row] : rows) {
        ids.push_back(id);
        values.insert(values.end(), row.begin(), row.end());
    }
    return EmbeddingMatrix(std::move(ids), rows.front().second.size(), std::move(values));
}

EmbeddingMatrix
random_matrix(std::size_t rows, std::size_t dim, std::mt19937& rng, bool coarse = false) {
    std::normal_distribution<float> dist;
    std::uniform_int_distribution<int> small(-2, 2);
    std::vector<std::string> ids;
    std::vector<float> values;
    for (std::size_t r = 0; r < rows; ++r) {
        ids.push_back("p" + std::to_string(rng() % 1000000) + "_" + std::to_string(r));
        for (std::size_t d = 0; d < dim; ++d) {
            values.push_back(coarse ? static_cast<float>(small(rng)) : dist(rng));
        }
    }
    return EmbeddingMatrix(std::move(ids), dim, std::move(values));
}

std::vector<float>
random_query(std::size_t dim, std::mt19937& rng, bool coarse = false) {
    std::normal_distribution<float> dist;
    std::uniform_int_distribution<int> small(-1, 1);
    std::vector<float> q(dim);
    for (auto& v : q) v = coarse ? static_cast<float>(small(rng)) : dist(rng);
    return q;
}

/// Independent oracle: score every row, sort all by (score desc, id asc).
SearchResult
brute_force(std::span<const float> q, const EmbeddingMatrix& m, std::size_t k) {
    std::vector<SearchHit> hits;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        double acc = 0.0;
        for (std::size_t d = 0; d < m.dim(); ++d) {
            acc += static_cast<double>(q[d]) * static_cast<double>(m.row(r)[d]);
        }
        hits.push_back({m.ids()[r], acc});
    }
    std::sort(hits.begin(), hits.end(), [](const SearchHit& a, const SearchHit& b) {
        return a.score != b.score ? a.score > b.score : a.id < b.id;
    });
    hits.resize(std::min(k, hits.size()));
    return {hits};
}

TEST(TopK, HandExample) {
    const auto m = make_matrix({{"a", {2, 0}}, {"b", {1, 0}}, {"c", {0, 5}}});
    const std::vector<float> q = {1, 0};
    const SearchResult expected{{{"a", 2.0}, {"b", 1.0}}};
    EXPECT_EQ(top_k(q, m, 2), expected);
    EXPECT_EQ(full_sort_search(q, m, 2), expected);
}

TEST(TopK, ZeroQueryTieBreaksById) {
    const auto m = make_matrix({{"d", {1, 2}}, {"b", {3, 4}}, {"a", {5, 6}}, {"c", {7, 8}}});
    const std::vector<float> q = {0, 0};
    const SearchResult expected{{{"a", 0.0}, {"b", 0.0}, {"c", 0.0}}};
    EXPECT_EQ(top_k(q, m, 3), expected);
    EXPECT_EQ(full_sort_search(q, m, 3), expected);
}

TEST(TopK, KLargerThanCorpusAndSingleRow) {
    const auto m = make_matrix({{"x", {1, 1}}, {"y", {2, -1}}});
    const std::vector<float> q = {1, 2};
    EXPECT_EQ(top_k(q, m, 10).entries.size(), 2U);
    EXPECT_EQ(full_sort_search(q, m, 10), top_k(q, m, 10));
    const auto single = make_matrix({{"only", {-3, -3}}});
    EXPECT_EQ(top_k(q, single, 5).entries.front().id, "only");
    EXPECT_EQ(full_sort_search(q, single, 5).entries.front().id, "only");
}

TEST(TopK, EmptyMatrix) {
    const EmbeddingMatrix m({}, 3, {});
    const std::vector<float> q = {1, 2, 3};
    EXPECT_TRUE(top_k(q, m, 4).entries.empty());
}

TEST(TopK, Preconditions) {
    const auto m = make_matrix({{"a", {1, 0}}});
    const std::vector<float> q3 = {1, 0, 0};
    const std::vector<float> q2 = {1, 0};
    const std::vector<float> qnan = {1, std::numeric_limits<float>::quiet_NaN()};
    EXPECT_THROW(top_k(q3, m, 1), PreconditionError);
    EXPECT_THROW(top_k(q2, m, 0), PreconditionError);
    EXPECT_THROW(top_k(qnan, m, 1), PreconditionError);
    EXPECT_THROW(full_sort_search(q3, m, 1), PreconditionError);
}

TEST(TopK, MatchesOracleOn768Dims) {
    std::mt19937 rng(7);
    const auto m = random_matrix(1000, 768, rng);
    for (int i = 0; i < 10; ++i) {
        const auto q = random_query(768, rng);
        const auto expected = brute_force(q, m, 20);
        EXPECT_EQ(top_k(q, m, 20), expected);
        EXPECT_EQ(full_sort_search(q, m, 20), expected);
    }
}

TEST(TopK, ManyTiesMatchOracle) {
    std::mt19937 rng(11);
    const auto m = random_matrix(300, 4, rng, true);
    for (int i = 0; i < 30; ++i) {
        const auto q = random_query(4, rng, true);
        for (std::size_t k : {1U, 7U, 50U, 299U, 300U, 301U}) {
            EXPECT_EQ(top_k(q, m, k), brute_force(q, m, k));
        }
    }
}

TEST(TopK, EveryKernelAndWorkerCountAgree) {
    std::mt19937 rng(3);
    const auto m = random_matrix(257, 33, rng);
    const auto q = random_query(33, rng);
    const auto reference = full_sort_search(q, m, 40);
    for (auto kernel : simd::available_kernels()) {
        for (std::size_t workers : {1U, 2U, 3U, 4U, 8U, 300U}) {
            SearchOptions options;
            options.kernel = kernel;
            options.workers = workers;
            EXPECT_EQ(top_k(q, m, 40, options), reference)
                << simd::kernel_name(kernel) << " workers=" << workers;
        }
    }
}

TEST(TopK, PositiveScalingKeepsOrder) {
    std::mt19937 rng(5);
    const auto m = random_matrix(200, 16, rng);
    for (int i = 0; i < 10; ++i) {
        auto q = random_query(16, rng);
        const auto base = top_k(q, m, 25);
        for (float c : {0.5F, 2.0F, 4.0F}) {
            std::vector<float> scaled(q);
            for (auto& v : scaled) v *= c;
            const auto result = top_k(scaled, m, 25);
            ASSERT_EQ(result.entries.size(), base.entries.size());
            for (std::size_t j = 0; j < base.entries.size(); ++j) {
                EXPECT_EQ(result.entries[j].id, base.entries[j].id);
                EXPECT_DOUBLE_EQ(result.entries[j].score, base.entries[j].score * c);
            }
        }
    }
}

TEST(TopK, ScoresNonIncreasing) {
    std::mt19937 rng(9);
    const auto m = random_matrix(100, 8, rng);
    const auto q = random_query(8, rng);
    const auto result = top_k(q, m, 100);
    for (std::size_t i = 1; i < result.entries.size(); ++i) {
        EXPECT_GE(result.entries[i - 1].score, result.entries[i].score);
    }
}

}  // namespace
}  // namespace xlrank
