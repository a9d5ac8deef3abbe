// Copyright 2026 The pathforest Authors
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

#include <algorithm>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "opf/math/metrics.hpp"
#include "opf/math/random.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using opf::confusion_matrix;
using opf::Matrix;
using opf::opf_accuracy;

TEST_CASE("confusion matrix tallies") {
    auto identity = confusion_matrix({1, 2}, {1, 2});
    CHECK(identity.n_classes == 2);
    CHECK(identity.counts[0][0] == 1);
    CHECK(identity.counts[1][1] == 1);
    CHECK(identity.diagonal());

    auto off = confusion_matrix({1, 1}, {2, 2});
    CHECK(off.counts[0][1] == 2);
    CHECK_FALSE(off.diagonal());

    auto mixed = confusion_matrix({1, 2, 2, 1}, {1, 2, 1, 1});
    CHECK(mixed.counts[0][0] == 2);
    CHECK(mixed.counts[1][1] == 1);
    CHECK(mixed.counts[1][0] == 1);
    CHECK(mixed.total() == 4);
}

TEST_CASE("confusion matrix input validation") {
    CHECK_THROWS_AS(confusion_matrix({1, 2}, {1}), opf::DimensionError);
    CHECK_THROWS_AS(confusion_matrix({}, {}), opf::TooSmallError);
    CHECK_THROWS_AS(confusion_matrix({0, 1}, {1, 1}), opf::ValueError);
}

TEST_CASE("balanced accuracy") {
    CHECK(opf_accuracy({1, 2, 3, 1}, {1, 2, 3, 1}) == 1.0);
    CHECK(opf_accuracy({1, 1, 2, 2}, {2, 2, 1, 1}) == 0.0);
    // e1 = (0, 1/2), e2 = (1/2, 0) -> 1 - 1/4
    CHECK(opf_accuracy({1, 1, 2, 2}, {1, 2, 2, 2}) == 0.75);
    CHECK_THROWS_AS(opf_accuracy({1, 1}, {1, 2}), opf::DegenerateClassError);
}

TEST_CASE("balanced accuracy is permutation-invariant and bounded") {
    opf::SplitMix64 rng(3);
    for (int round = 0; round < 100; ++round) {
        const int c = 2 + static_cast<int>(rng.below(3));
        const std::size_t n = static_cast<std::size_t>(2 * c) + rng.below(30);
        std::vector<int> truth(n), pred(n);
        for (std::size_t i = 0; i < n; ++i) {
            truth[i] = 1 + static_cast<int>(i % static_cast<std::size_t>(c)); // all present
            pred[i] = 1 + static_cast<int>(rng.below(static_cast<std::size_t>(c)));
        }
        const double acc = opf_accuracy(truth, pred);
        REQUIRE(acc >= 0.0);
        REQUIRE(acc <= 1.0);
        REQUIRE((acc == 1.0) == confusion_matrix(truth, pred).diagonal());

        std::vector<int> perm(static_cast<std::size_t>(c));
        for (int i = 0; i < c; ++i) perm[static_cast<std::size_t>(i)] = i + 1;
        rng.shuffle(perm);
        std::vector<int> truth2(n), pred2(n);
        for (std::size_t i = 0; i < n; ++i) {
            truth2[i] = perm[static_cast<std::size_t>(truth[i] - 1)];
            pred2[i] = perm[static_cast<std::size_t>(pred[i] - 1)];
        }
        REQUIRE_THAT(opf_accuracy(truth2, pred2), WithinAbs(acc, 1e-12));
    }
}

TEST_CASE("feature standardization") {
    auto out = opf::normalize_features(Matrix::from_rows({{0.0}, {2.0}}));
    CHECK(out.at(0, 0) == -1.0); // mean 1, population std 1
    CHECK(out.at(1, 0) == 1.0);

    auto constant = opf::normalize_features(Matrix::from_rows({{5.0}, {5.0}, {5.0}}));
    for (std::size_t i = 0; i < constant.rows(); ++i) CHECK(constant.at(i, 0) == 0.0);

    // Standardizing a standardized column is (numerically) a no-op.
    auto once = opf::normalize_features(Matrix::from_rows({{1.0}, {4.0}, {7.0}, {8.0}}));
    auto twice = opf::normalize_features(once);
    for (std::size_t i = 0; i < once.rows(); ++i)
        CHECK_THAT(twice.at(i, 0), WithinAbs(once.at(i, 0), 1e-12));

    CHECK_THROWS_AS(opf::normalize_features(Matrix::from_rows({{1.0}})),
                    opf::TooSmallError);
}
