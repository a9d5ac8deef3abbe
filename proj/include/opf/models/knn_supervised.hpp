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

#pragma once

#include <chrono>
#include <vector>

#include "opf/core/knn_subgraph.hpp"
#include "opf/errors.hpp"
#include "opf/math/metrics.hpp"
#include "opf/matrix.hpp"
#include "opf/models/model.hpp"
#include "opf/models/unsupervised.hpp"

namespace opf {

/// Supervised classifier on a kNN subgraph: the clustering conquest runs with
/// true labels carried from the density-maximum roots, and k is chosen in
/// 1..k_max to maximize the balanced accuracy on the validation set (ties go
/// to the smaller k). The fitted model keeps the k_best graph.
inline Fitted knn_supervised_fit(const Matrix& X, const std::vector<int>& y,
                                 const Matrix& X_val, const std::vector<int>& y_val,
                                 int k_max,
                                 DistanceMetric metric = DistanceMetric::log_squared_euclidean) {
    const auto started = std::chrono::steady_clock::now();
    const int n = static_cast<int>(X.rows());
    if (X.rows() != y.size() || X_val.rows() != y_val.size())
        throw DimensionError("knn_supervised_fit: samples and labels disagree");
    if (n < 2) throw TooSmallError("knn_supervised_fit: need at least 2 samples");
    if (X_val.rows() < 1) throw TooSmallError("knn_supervised_fit: empty validation set");
    if (X_val.cols() != X.cols())
        throw DimensionError("knn_supervised_fit: train/validation feature widths differ");
    if (k_max < 1 || k_max >= n)
        throw ValueError("knn_supervised_fit: k_max = " + std::to_string(k_max) +
                         " must satisfy 1 <= k_max < " + std::to_string(n));
    for (std::size_t i = 0; i < y.size(); ++i)
        if (y[i] < 1)
            throw ValueError("knn_supervised_fit: sample " + std::to_string(i) +
                             " is unlabeled");

    Fitted fitted;
    TrainedModel& model = fitted.model;
    model.variant = Variant::knn_supervised;
    model.metric = metric;

    KnnSubgraph kg;
    kg.base = Subgraph::from_data(X, y);
    auto dist = detail::subgraph_distance(kg.base, metric);
    const NeighborCache cache(n, k_max, dist);

    int best_k = 0;
    double best_acc = -1.0;
    for (int k = 1; k <= k_max; ++k) {
        build_knn_adjacency(kg, k, cache);
        compute_density(kg);
        detail::density_conquest(kg, true);

        TrainedModel probe;
        probe.variant = Variant::knn_supervised;
        probe.metric = metric;
        probe.knn = {k, kg.d_f, kg.rho_min, kg.rho_max, kg.n_clusters};
        probe.graph = kg.base; // costs/labels of this k's conquest
        const auto preds = detail::density_classify_impl(probe, X_val, false);
        std::vector<int> labels(preds.size());
        for (std::size_t i = 0; i < preds.size(); ++i) labels[i] = preds[i].label;
        const double acc = opf_accuracy(y_val, labels);
        if (acc > best_acc) {
            best_acc = acc;
            best_k = k;
        }
    }

    build_knn_adjacency(kg, best_k, cache);
    compute_density(kg);
    detail::density_conquest(kg, true);

    model.knn = {best_k, kg.d_f, kg.rho_min, kg.rho_max, kg.n_clusters};
    model.graph = std::move(kg.base);

    fitted.report.k_best = best_k;
    fitted.report.n_clusters = kg.n_clusters;
    fitted.report.n_prototypes = kg.n_clusters; // density-maximum roots
    fitted.report.validation_accuracy = best_acc;
    fitted.report.n_conflicting_duplicates =
        detail::count_conflicting_duplicates(model.graph);
    fitted.report.training_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return fitted;
}

} // namespace opf
