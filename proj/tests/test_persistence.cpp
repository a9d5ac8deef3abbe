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

#include <fstream>
#include <string>

#include <catch2/catch_amalgamated.hpp>

#include "opf/models/knn_supervised.hpp"
#include "opf/models/persistence.hpp"
#include "opf/models/predict.hpp"
#include "opf/models/supervised.hpp"
#include "opf/models/unsupervised.hpp"
#include "support/oracles.hpp"

using opf::DistanceMetric;
using opf::load_model;
using opf::Matrix;
using opf::save_model;
using opf::TrainedModel;

namespace {

Matrix random_points(opf::SplitMix64& rng, std::size_t n, std::size_t m, double span) {
    Matrix X(n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) X.at(i, j) = rng.next_double() * span;
    return X;
}

void check_prediction_identity(const TrainedModel& a, const TrainedModel& b,
                               const Matrix& probes) {
    const auto pa = opf::predict_detailed(a, probes);
    const auto pb = opf::predict_detailed(b, probes);
    REQUIRE(pa.size() == pb.size());
    for (std::size_t i = 0; i < pa.size(); ++i) {
        REQUIRE(pa[i].label == pb[i].label);
        REQUIRE(pa[i].cost == pb[i].cost);
        REQUIRE(pa[i].via == pb[i].via);
    }
}

} // namespace

TEST_CASE("supervised model round-trips through disk") {
    oracles::TempDir dir("opf-model");
    opf::SplitMix64 rng(12);
    const auto data = oracles::random_dataset(rng, 20, 3);
    auto [model, report] = opf::supervised_fit(data.X, data.y, DistanceMetric::euclidean);

    const auto path = dir.path / "model.opfm";
    save_model(model, path);
    const auto back = load_model(path);

    CHECK(back.variant == model.variant);
    CHECK(back.metric == model.metric);
    CHECK(back.graph.ordered_indices == model.graph.ordered_indices);
    CHECK(opf::serialize_model(back) == opf::serialize_model(model));

    check_prediction_identity(model, back, random_points(rng, 100, data.X.cols(), 12.0));
}

TEST_CASE("density models round-trip through disk") {
    oracles::TempDir dir("opf-model");
    const auto data = oracles::gaussian_blobs({{0.0, 0.0}, {10.0, 0.0}}, 20, 3003);
    opf::SplitMix64 rng(77);

    SECTION("unsupervised") {
        auto [model, report] = opf::unsupervised_fit(data.X, 6, DistanceMetric::euclidean);
        const auto path = dir.path / "cluster.opfm";
        save_model(model, path);
        const auto back = load_model(path);
        CHECK(back.knn.k_best == model.knn.k_best);
        CHECK(back.knn.d_f == model.knn.d_f);
        check_prediction_identity(model, back, random_points(rng, 50, 2, 12.0));
    }

    SECTION("knn-supervised") {
        const auto parts = oracles::shuffle_split(data, 28, 12, 4);
        auto [model, report] =
            opf::knn_supervised_fit(parts.train.X, parts.train.y, parts.val.X, parts.val.y,
                                    6, DistanceMetric::euclidean);
        const auto path = dir.path / "knn.opfm";
        save_model(model, path);
        check_prediction_identity(model, load_model(path),
                                  random_points(rng, 50, 2, 12.0));
    }
}

TEST_CASE("the four-point model keeps its costs") {
    oracles::TempDir dir("opf-model");
    auto [model, report] =
        opf::supervised_fit(Matrix::from_rows({{0.0}, {1.0}, {10.0}, {11.0}}),
                            {1, 1, 2, 2}, DistanceMetric::euclidean);
    const auto path = dir.path / "four.opfm";
    save_model(model, path);
    const auto back = load_model(path);
    CHECK(back.graph.nodes[0].cost == 1.0);
    CHECK(back.graph.nodes[1].cost == 0.0);
    CHECK(back.graph.nodes[2].cost == 0.0);
    CHECK(back.graph.nodes[3].cost == 1.0);
}

TEST_CASE("version and corruption checks") {
    oracles::TempDir dir("opf-model");
    auto [model, report] = opf::supervised_fit(Matrix::from_rows({{0.0}, {1.0}}), {1, 2},
                                               DistanceMetric::euclidean);
    auto bytes = opf::serialize_model(model);

    SECTION("future version") {
        bytes[4] = 99; // little-endian version field right after the magic
        CHECK_THROWS_AS(opf::deserialize_model(bytes, "patched"), opf::VersionError);
    }
    SECTION("bad magic") {
        bytes[0] = 'X';
        CHECK_THROWS_AS(opf::deserialize_model(bytes, "patched"), opf::ParseError);
    }
    SECTION("truncation") {
        CHECK_THROWS_AS(
            opf::deserialize_model(bytes.substr(0, bytes.size() / 2), "patched"),
            opf::ParseError);
    }
    SECTION("trailing bytes") {
        CHECK_THROWS_AS(opf::deserialize_model(bytes + "zz", "patched"), opf::ParseError);
    }
    SECTION("untrained model cannot serialize") {
        TrainedModel blank;
        CHECK_THROWS_AS(opf::serialize_model(blank), opf::InvalidStateError);
    }
}

TEST_CASE("json export is parseable and carries the expected keys") {
    oracles::TempDir dir("opf-model");
    auto [model, report] = opf::supervised_fit(Matrix::from_rows({{0.0}, {1.0}}), {1, 2},
                                               DistanceMetric::euclidean);
    const auto path = dir.path / "model.json";
    opf::save_model_json(model, path);

    std::ifstream in(path);
    const auto doc = nlohmann::json::parse(in);
    CHECK(doc["variant"] == "supervised");
    CHECK(doc["metric"] == "euclidean");
    CHECK(doc["nodes"].size() == 2);
    CHECK(doc["format_version"] == opf::kModelFormatVersion);
}
