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

#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "opf/models/semi_supervised.hpp"
#include "opf/models/supervised.hpp"
#include "support/oracles.hpp"

using opf::DistanceMetric;
using opf::Matrix;
using opf::semi_supervised_fit;

TEST_CASE("zero unlabeled samples reduces to the supervised fit") {
    opf::SplitMix64 rng(500);
    const auto data = oracles::random_dataset(rng, 12, 2);

    auto semi = semi_supervised_fit(data.X, data.y, Matrix(), DistanceMetric::euclidean);
    auto sup = opf::supervised_fit(data.X, data.y, DistanceMetric::euclidean);

    REQUIRE(semi.model.graph.size() == sup.model.graph.size());
    CHECK(semi.model.graph.ordered_indices == sup.model.graph.ordered_indices);
    for (int i = 0; i < sup.model.graph.size(); ++i) {
        const auto& a = semi.model.graph.nodes[static_cast<std::size_t>(i)];
        const auto& b = sup.model.graph.nodes[static_cast<std::size_t>(i)];
        CHECK(a.cost == b.cost);
        CHECK(a.predecessor == b.predecessor);
        CHECK(a.root == b.root);
        CHECK(a.predicted_label == b.predicted_label);
        CHECK(a.is_prototype == b.is_prototype);
    }
}

TEST_CASE("unlabeled samples inherit the nearer tree") {
    auto [model, report] = semi_supervised_fit(
        Matrix::from_rows({{0.0}, {10.0}}), {1, 2}, Matrix::from_rows({{1.0}, {9.0}}),
        DistanceMetric::euclidean);

    REQUIRE(model.graph.size() == 4);
    CHECK(report.n_prototypes == 2);
    CHECK(model.graph.nodes[2].true_label == 0);
    CHECK(model.graph.nodes[2].predicted_label == 1);
    CHECK(model.graph.nodes[2].cost == 1.0);
    CHECK(model.graph.nodes[3].predicted_label == 2);
    CHECK(model.graph.nodes[3].cost == 1.0);

    // prediction runs over the whole union graph
    const auto preds = opf::path_cost_classify(model, Matrix::from_rows({{1.2}, {8.8}}));
    CHECK(preds[0].label == 1);
    CHECK(preds[1].label == 2);
}

TEST_CASE("an equidistant unlabeled sample resolves by heap order and is flagged") {
    auto [model, report] =
        semi_supervised_fit(Matrix::from_rows({{0.0}, {10.0}}), {1, 2},
                            Matrix::from_rows({{5.0}}), DistanceMetric::euclidean);
    // node 0 pops first among the two cost-0 prototypes
    CHECK(model.graph.nodes[2].predicted_label == 1);
    CHECK(model.graph.nodes[2].cost == 5.0);
    CHECK(report.n_label_ties == 1);
}

TEST_CASE("labeled part must carry two classes") {
    CHECK_THROWS_AS(semi_supervised_fit(Matrix::from_rows({{0.0}, {1.0}}), {1, 1},
                                        Matrix::from_rows({{0.5}}),
                                        DistanceMetric::euclidean),
                    opf::SingleClassError);
    CHECK_THROWS_AS(semi_supervised_fit(Matrix::from_rows({{0.0}, {1.0}}), {1, 0},
                                        Matrix::from_rows({{0.5}}),
                                        DistanceMetric::euclidean),
                    opf::ValueError);
    CHECK_THROWS_AS(semi_supervised_fit(Matrix::from_rows({{0.0}, {1.0}}), {1, 2},
                                        Matrix::from_rows({{0.5, 0.5}}),
                                        DistanceMetric::euclidean),
                    opf::DimensionError);
}

TEST_CASE("self-classification holds across the union on separated blobs") {
    const auto data = oracles::gaussian_blobs({{0.0, 0.0}, {11.0, 0.0}}, 15, 42);
    // drop the labels of every third sample
    Matrix labeled, unlabeled;
    std::vector<int> y;
    for (std::size_t i = 0; i < data.X.rows(); ++i) {
        if (i % 3 == 0) {
            unlabeled.append_row(data.X.row(i));
        } else {
            labeled.append_row(data.X.row(i));
            y.push_back(data.y[i]);
        }
    }
    auto [model, report] =
        semi_supervised_fit(labeled, y, unlabeled, DistanceMetric::euclidean);
    REQUIRE(opf::predecessors_acyclic(model.graph));

    // every unlabeled node was assigned the label of its blob
    for (int i = static_cast<int>(labeled.rows()); i < model.graph.size(); ++i) {
        const auto& nd = model.graph.nodes[static_cast<std::size_t>(i)];
        const int expected = nd.features[0] < 5.5 ? 1 : 2;
        CHECK(nd.predicted_label == expected);
    }
}
