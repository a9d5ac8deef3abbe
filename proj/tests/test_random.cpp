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
#include <numeric>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "opf/math/random.hpp"

TEST_CASE("streams are reproducible") {
    CHECK(opf::rng_uniform(0.0, 1.0, 64, 123) == opf::rng_uniform(0.0, 1.0, 64, 123));
    CHECK(opf::rng_gaussian(2.0, 3.0, 64, 9) == opf::rng_gaussian(2.0, 3.0, 64, 9));
    CHECK(opf::rng_uniform(0.0, 1.0, 64, 123) != opf::rng_uniform(0.0, 1.0, 64, 124));
}

TEST_CASE("uniform samples stay in [low, high)") {
    for (auto [lo, hi] : {std::pair{0.0, 1.0}, std::pair{-3.0, 7.0}}) {
        const auto xs = opf::rng_uniform(lo, hi, 10000, 77);
        for (double x : xs) {
            REQUIRE(x >= lo);
            REQUIRE(x < hi);
        }
    }
}

TEST_CASE("gaussian sample moments") {
    const auto xs = opf::rng_gaussian(0.0, 1.0, 100000, 5);
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) /
                        static_cast<double>(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= static_cast<double>(xs.size());
    CHECK(std::abs(mean) <= 0.02);
    CHECK(std::abs(var - 1.0) <= 0.05);
}

TEST_CASE("random generator argument validation") {
    CHECK_THROWS_AS(opf::rng_uniform(1.0, 1.0, 4, 0), opf::ValueError);
    CHECK_THROWS_AS(opf::rng_uniform(2.0, 1.0, 4, 0), opf::ValueError);
    CHECK_THROWS_AS(opf::rng_uniform(0.0, 1.0, 0, 0), opf::ValueError);
    CHECK_THROWS_AS(opf::rng_gaussian(0.0, -1.0, 4, 0), opf::ValueError);
}

TEST_CASE("shuffle is a deterministic permutation") {
    std::vector<int> v(100);
    std::iota(v.begin(), v.end(), 0);
    auto a = v;
    auto b = v;
    opf::SplitMix64 r1(31);
    opf::SplitMix64 r2(31);
    r1.shuffle(a);
    r2.shuffle(b);
    CHECK(a == b);
    CHECK(a != v);
    auto sorted = a;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == v);
}
