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

#include "opf/models/persistence.hpp"
#include "opf/models/supervised.hpp"
#include "support/oracles.hpp"

using opf::DistanceMetric;
using opf::Matrix;
using opf::path_cost_classify;
using opf::supervised_fit;

namespace {

const auto kFourPoints = Matrix::from_rows({{0.0}, {1.0}, {10.0}, {11.0}});
const std::vector<int> kFourLabels = {1, 1, 2, 2};

} // namespace

TEST_CASE("four-point line: prototypes, costs and labels") {
    auto [model, report] =
        supervised_fit(kFourPoints, kFourLabels, DistanceMetric::euclidean);

    CHECK(report.n_prototypes == 2);
    CHECK(model.graph.nodes[1].is_prototype);
    CHECK(model.graph.nodes[2].is_prototype);

    CHECK(model.graph.nodes[0].cost == 1.0);
    CHECK(model.graph.nodes[1].cost == 0.0);
    CHECK(model.graph.nodes[2].cost == 0.0);
    CHECK(model.graph.nodes[3].cost == 1.0);

    for (int i = 0; i < 4; ++i)
        CHECK(model.graph.nodes[static_cast<std::size_t>(i)].predicted_label ==
              kFourLabels[static_cast<std::size_t>(i)]);

    // ordered_indices is a cost-sorted permutation
    REQUIRE(model.graph.ordered_indices.size() == 4);
    for (std::size_t i = 1; i < 4; ++i)
        CHECK(model.graph.nodes[static_cast<std::size_t>(model.graph.ordered_indices[i])]
                  .cost >=
              model.graph.nodes[static_cast<std::size_t>(model.graph.ordered_indices[i - 1])]
                  .cost);

    CHECK(opf::predecessors_acyclic(model.graph));
}

TEST_CASE("two samples, two classes: both prototypes at cost zero") {
    auto [model, report] = supervised_fit(Matrix::from_rows({{0.0}, {5.0}}), {1, 2},
                                          DistanceMetric::euclidean);
    CHECK(report.n_prototypes == 2);
    for (const auto& nd : model.graph.nodes) {
        CHECK(nd.is_prototype);
        CHECK(nd.cost == 0.0);
        CHECK(nd.predecessor == opf::kNil);
        CHECK(nd.root == nd.idx);
    }
}

TEST_CASE("test sample between the classes picks the cheaper prototype") {
    auto [model, report] =
        supervised_fit(kFourPoints, kFourLabels, DistanceMetric::euclidean);
    const auto preds = path_cost_classify(model, Matrix::from_rows({{5.4}}));
    REQUIRE(preds.size() == 1);
    CHECK(preds[0].label == 1);
    CHECK(preds[0].via == 1);
    // cost = max(C(1), d(5.4, 1)) with C(1) = 0
    CHECK(preds[0].cost ==
          opf::distance(DistanceMetric::euclidean, std::vector<double>{5.4},
                        std::vector<double>{1.0}));
}

TEST_CASE("training samples classify to their own labels") {
    auto [model, report] =
        supervised_fit(kFourPoints, kFourLabels, DistanceMetric::euclidean);
    const auto preds = path_cost_classify(model, kFourPoints);
    for (int i = 0; i < 4; ++i) {
        CHECK(preds[static_cast<std::size_t>(i)].label ==
              kFourLabels[static_cast<std::size_t>(i)]);
        CHECK(preds[static_cast<std::size_t>(i)].cost ==
              model.graph.nodes[static_cast<std::size_t>(i)].cost);
    }
}

TEST_CASE("argument validation") {
    CHECK_THROWS_AS(supervised_fit(kFourPoints, {1, 1, 2}, DistanceMetric::euclidean),
                    opf::DimensionError);
    CHECK_THROWS_AS(supervised_fit(Matrix::from_rows({{0.0}}), {1},
                                   DistanceMetric::euclidean),
                    opf::TooSmallError);
    CHECK_THROWS_AS(
        supervised_fit(kFourPoints, {1, 1, 1, 1}, DistanceMetric::euclidean),
        opf::SingleClassError);

    auto dm = opf::pre_compute_distances(Matrix::from_rows({{0.0}, {1.0}}),
                                         DistanceMetric::euclidean);
    CHECK_THROWS_AS(supervised_fit(kFourPoints, kFourLabels, DistanceMetric::euclidean, &dm),
                    opf::DimensionError);

    auto [model, report] =
        supervised_fit(kFourPoints, kFourLabels, DistanceMetric::euclidean);
    CHECK_THROWS_AS(path_cost_classify(model, Matrix::from_rows({{1.0, 2.0}})),
                    opf::DimensionError);
    opf::TrainedModel untrained;
    CHECK_THROWS_AS(path_cost_classify(untrained, kFourPoints), opf::InvalidStateError);
}

TEST_CASE("conflicting duplicates are permitted and reported") {
    auto [model, report] = supervised_fit(Matrix::from_rows({{1.0}, {1.0}, {4.0}}),
                                          {1, 2, 1}, DistanceMetric::euclidean);
    CHECK(report.n_conflicting_duplicates == 2);
}

TEST_CASE("trained costs equal the bottleneck oracle on random instances") {
    opf::SplitMix64 rng(808);
    int conflict_free_seen = 0;
    for (int round = 0; round < 50; ++round) {
        const auto data = oracles::random_dataset(rng);
        auto [model, report] = supervised_fit(data.X, data.y, DistanceMetric::euclidean);

        auto weight = [&](int i, int j) {
            return opf::distance(DistanceMetric::euclidean, data.X.row(static_cast<std::size_t>(i)),
                                 data.X.row(static_cast<std::size_t>(j)));
        };
        const auto closure = oracles::minimax_closure(model.graph.size(), weight);
        std::vector<int> prototypes;
        for (const auto& nd : model.graph.nodes)
            if (nd.is_prototype) prototypes.push_back(nd.idx);
        const auto expected = oracles::bottleneck_from_prototypes(closure, prototypes);
        for (int t = 0; t < model.graph.size(); ++t)
            REQUIRE(model.graph.nodes[static_cast<std::size_t>(t)].cost ==
                    expected[static_cast<std::size_t>(t)]);

        REQUIRE(opf::predecessors_acyclic(model.graph));
        // ordered_indices: a permutation sorted by ascending cost
        auto sorted = model.graph.ordered_indices;
        std::sort(sorted.begin(), sorted.end());
        REQUIRE(sorted.size() == static_cast<std::size_t>(model.graph.size()));
        for (std::size_t i = 0; i < sorted.size(); ++i)
            REQUIRE(sorted[i] == static_cast<int>(i));
        for (std::size_t i = 1; i < model.graph.ordered_indices.size(); ++i)
            REQUIRE(
                model.graph.nodes[static_cast<std::size_t>(model.graph.ordered_indices[i])]
                    .cost >=
                model.graph
                    .nodes[static_cast<std::size_t>(model.graph.ordered_indices[i - 1])]
                    .cost);
        // costs never decrease towards the leaves
        for (const auto& nd : model.graph.nodes)
            if (nd.predecessor != opf::kNil)
                REQUIRE(nd.cost >=
                        model.graph.nodes[static_cast<std::size_t>(nd.predecessor)].cost);
        for (const auto& nd : model.graph.nodes)
            if (nd.is_prototype) {
                REQUIRE(nd.cost == 0.0);
                REQUIRE(nd.root == nd.idx);
                REQUIRE(nd.predecessor == opf::kNil);
            }

        if (oracles::conflict_free(data)) {
            ++conflict_free_seen;
            const auto preds = path_cost_classify(model, data.X);
            for (std::size_t i = 0; i < data.y.size(); ++i)
                REQUIRE(preds[i].label == data.y[i]);
        }
    }
    CHECK(conflict_free_seen > 0);
}

TEST_CASE("early termination equals the naive full scan") {
    opf::SplitMix64 rng(4242);
    const auto data = oracles::random_dataset(rng, 40, 2);
    auto [model, report] = supervised_fit(data.X, data.y, DistanceMetric::euclidean);

    Matrix tests(500, data.X.cols());
    for (std::size_t i = 0; i < tests.rows(); ++i)
        for (std::size_t j = 0; j < tests.cols(); ++j)
            tests.at(i, j) = rng.next_double() * 12.0 - 1.0;

    const auto fast = path_cost_classify(model, tests);
    for (std::size_t i = 0; i < tests.rows(); ++i) {
        const auto slow = oracles::naive_path_cost_classify(model, tests.row(i));
        REQUIRE(fast[i].label == slow.label);
        REQUIRE(fast[i].cost == slow.cost);
        REQUIRE(fast[i].via == slow.via);
    }
}

TEST_CASE("a precomputed distance matrix changes nothing") {
    opf::SplitMix64 rng(31337);
    const auto data = oracles::random_dataset(rng, 25, 3);
    const auto dm = opf::pre_compute_distances(data.X, DistanceMetric::euclidean);

    auto direct = supervised_fit(data.X, data.y, DistanceMetric::euclidean);
    auto looked_up = supervised_fit(data.X, data.y, DistanceMetric::euclidean, &dm);
    CHECK(opf::serialize_model(direct.model) == opf::serialize_model(looked_up.model));
}
