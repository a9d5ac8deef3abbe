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
#include <set>
#include <tuple>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "opf/dataset/split.hpp"
#include "opf/math/random.hpp"

using opf::Dataset;
using opf::split_dataset;

namespace {

Dataset numbered(std::size_t n) {
    Dataset ds;
    ds.n_classes = 2;
    for (std::size_t i = 0; i < n; ++i) {
        ds.ids.push_back(static_cast<int>(i));
        ds.labels.push_back(1 + static_cast<int>(i % 2));
        ds.features.append_row(std::vector<double>{static_cast<double>(i), 0.5});
    }
    return ds;
}

using Row = std::tuple<int, int, std::vector<double>>;

std::vector<Row> rows_of(const Dataset& ds) {
    std::vector<Row> rows;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        auto r = ds.features.row(i);
        rows.emplace_back(ds.ids[i], ds.labels[i], std::vector<double>(r.begin(), r.end()));
    }
    return rows;
}

} // namespace

TEST_CASE("half split of four samples") {
    const auto ds = numbered(4);
    auto [a, b] = split_dataset(ds, 0.5, 1);
    CHECK(a.size() == 2);
    CHECK(b.size() == 2);

    std::set<int> ids(a.ids.begin(), a.ids.end());
    for (int id : b.ids) CHECK_FALSE(ids.contains(id));

    auto all = rows_of(a);
    auto tail = rows_of(b);
    all.insert(all.end(), tail.begin(), tail.end());
    std::sort(all.begin(), all.end());
    CHECK(all == rows_of(ds)); // input rows were already sorted by id
}

TEST_CASE("splitting is deterministic in the seed") {
    const auto ds = numbered(12);
    auto [a1, b1] = split_dataset(ds, 0.4, 7);
    auto [a2, b2] = split_dataset(ds, 0.4, 7);
    CHECK(a1 == a2);
    CHECK(b1 == b2);
}

TEST_CASE("round-half-to-even sizing") {
    // 0.25 * 10 = 2.5 rounds to 2.
    const auto ds = numbered(10);
    auto [a1, b1] = split_dataset(ds, 0.25, 1);
    CHECK(a1.size() == 2);
    CHECK(b1.size() == 8);

    auto [a2, b2] = split_dataset(ds, 0.25, 2);
    CHECK(a2.size() == 2);
    CHECK(a1.ids != a2.ids); // different seeds shuffle differently

    // 0.35 * 10 = 3.5 rounds to 4.
    auto [a3, b3] = split_dataset(ds, 0.35, 1);
    CHECK(a3.size() == 4);
}

TEST_CASE("empty parts are rejected") {
    CHECK_THROWS_AS(split_dataset(numbered(2), 0.999, 1), opf::ValueError);
    CHECK_THROWS_AS(split_dataset(numbered(2), 0.001, 1), opf::ValueError);
    CHECK_THROWS_AS(split_dataset(numbered(4), 0.0, 1), opf::ValueError);
    CHECK_THROWS_AS(split_dataset(numbered(4), 1.0, 1), opf::ValueError);
    CHECK_THROWS_AS(split_dataset(numbered(1), 0.5, 1), opf::TooSmallError);
}

TEST_CASE("parts partition the input for random parameters") {
    opf::SplitMix64 rng(55);
    for (int round = 0; round < 40; ++round) {
        const std::size_t n = 2 + rng.below(40);
        const auto ds = numbered(n);
        const double p = 0.05 + rng.next_double() * 0.9;
        const std::uint64_t seed = rng.next_u64();

        std::pair<Dataset, Dataset> parts;
        try {
            parts = split_dataset(ds, p, seed);
        } catch (const opf::ValueError&) {
            continue; // p rounded a part to zero for this n
        }
        auto& [a, b] = parts;
        REQUIRE(a.size() + b.size() == n);
        REQUIRE(a.size() >= 1);
        REQUIRE(b.size() >= 1);
        REQUIRE(a.n_classes == ds.n_classes);

        std::set<int> seen(a.ids.begin(), a.ids.end());
        for (int id : b.ids) REQUIRE_FALSE(seen.contains(id));

        auto all = rows_of(a);
        auto tail = rows_of(b);
        all.insert(all.end(), tail.begin(), tail.end());
        std::sort(all.begin(), all.end());
        REQUIRE(all == rows_of(ds));
    }
}
