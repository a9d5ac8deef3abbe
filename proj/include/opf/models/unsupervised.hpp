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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "opf/core/heap.hpp"
#include "opf/core/knn_subgraph.hpp"
#include "opf/errors.hpp"
#include "opf/math/distance.hpp"
#include "opf/matrix.hpp"
#include "opf/models/model.hpp"

namespace opf {

/// Handicap subtracted from non-root trivial path values so only density
/// maxima can become roots. Fixed at 1.0 on the [1, 1000] density scale.
inline constexpr double kClusterDelta = 1.0;

namespace detail {

/// Min-density path maximization over the kNN graph (the clustering conquest).
/// Every node starts with the handicapped value rho - delta; a node extracted
/// while still unconquered is a p.d.f. maximum and roots a new cluster with its
/// full rho. Propagation value is min(f(s), rho(t)). When carry_true_labels is
/// set, roots seed predicted_label with their own true label and conquests
/// propagate it. Returns the number of clusters.
inline int density_conquest(KnnSubgraph& kg, bool carry_true_labels) {
    Subgraph& g = kg.base;
    const int n = g.size();
    if (kg.adjacency.size() != static_cast<std::size_t>(n))
        throw InvalidStateError("density_conquest: adjacency not built");

    CostHeap heap(n, HeapPolicy::max);
    for (Node& nd : g.nodes) {
        nd.cost = nd.density - kClusterDelta;
        nd.predecessor = kNil;
        nd.root = nd.idx;
        nd.cluster_label = 0;
        nd.predicted_label = 0;
        heap.insert(nd.idx, nd.cost);
    }

    int n_clusters = 0;
    while (!heap.empty()) {
        const int s = heap.extract();
        Node& src = g.nodes[static_cast<std::size_t>(s)];
        if (src.predecessor == kNil) {
            src.cost = src.density;
            src.cluster_label = n_clusters++;
            if (carry_true_labels) src.predicted_label = src.true_label;
        }
        for (const Arc& a : kg.adjacency[static_cast<std::size_t>(s)]) {
            if (heap.color(a.to) == HeapColor::black) continue;
            Node& dst = g.nodes[static_cast<std::size_t>(a.to)];
            if (dst.cost >= src.cost) continue;
            const double value = std::min(src.cost, dst.density);
            if (value > dst.cost) {
                dst.cost = value;
                dst.predecessor = s;
                dst.root = src.root;
                dst.cluster_label = src.cluster_label;
                dst.predicted_label = src.predicted_label;
                heap.update(a.to, value);
            }
        }
    }
    kg.n_clusters = n_clusters;
    g.trained = true;
    return n_clusters;
}

/// Normalized-cut score of the current partition: arc dissimilarities become
/// affinities 1/(1+d), and the score sums W_ext / (W_int + W_ext) per cluster.
/// Lower is better.
inline double normalized_cut(const KnnSubgraph& kg) {
    const int n = kg.base.size();
    std::vector<double> w_int(static_cast<std::size_t>(kg.n_clusters), 0.0);
    std::vector<double> w_ext(static_cast<std::size_t>(kg.n_clusters), 0.0);
    for (int s = 0; s < n; ++s) {
        const auto c = static_cast<std::size_t>(
            kg.base.nodes[static_cast<std::size_t>(s)].cluster_label);
        for (const Arc& a : kg.adjacency[static_cast<std::size_t>(s)]) {
            const double affinity = 1.0 / (1.0 + a.weight);
            if (kg.base.nodes[static_cast<std::size_t>(a.to)].cluster_label ==
                static_cast<int>(c))
                w_int[c] += affinity;
            else
                w_ext[c] += affinity;
        }
    }
    double cut = 0.0;
    for (std::size_t c = 0; c < w_int.size(); ++c) {
        const double total = w_int[c] + w_ext[c];
        if (total > 0.0) cut += w_ext[c] / total;
    }
    return cut;
}

/// Shared out-of-sample rule for density models: fetch the k_best nearest
/// training nodes, estimate the sample's density against them with the model's
/// sigma, rescale it through the training bounds, and adopt the label of the
/// neighbor maximizing min(f(s), rho_t). use_cluster_labels picks between
/// cluster ids (unsupervised) and propagated class labels (kNN-supervised).
inline std::vector<Prediction> density_classify_impl(const TrainedModel& model,
                                                     const Matrix& X,
                                                     bool use_cluster_labels) {
    const Subgraph& g = model.graph;
    if (!g.trained) throw InvalidStateError("predict on an untrained model");
    if (static_cast<int>(X.cols()) != g.n_features)
        throw DimensionError("predict: model has " + std::to_string(g.n_features) +
                             " features, data has " + std::to_string(X.cols()));
    const int n = g.size();
    const int k = std::min(model.knn.k_best, n);
    if (k < 1) throw InvalidStateError("density model without a fitted k");

    const double sigma = model.knn.d_f / 3.0;
    const double two_sigma_sq = 2.0 * sigma * sigma;
    const double norm = std::sqrt(std::numbers::pi * two_sigma_sq);

    std::vector<Prediction> out(X.rows());
    std::vector<std::pair<double, int>> nearest;
    for (std::size_t i = 0; i < X.rows(); ++i) {
        const auto sample = X.row(i);
        nearest.clear();
        nearest.reserve(static_cast<std::size_t>(n));
        for (int s = 0; s < n; ++s)
            nearest.emplace_back(distance(model.metric, sample, g.features_of(s)), s);
        std::partial_sort(nearest.begin(), nearest.begin() + k, nearest.end());

        double rho_t = kDensityCeil;
        if (model.knn.d_f > 0.0) {
            double sum = 0.0;
            for (int j = 0; j < k; ++j) {
                const double d = nearest[static_cast<std::size_t>(j)].first;
                sum += std::exp(-(d * d) / two_sigma_sq);
            }
            const double raw = sum / (norm * static_cast<double>(k));
            rho_t = scale_density(raw, model.knn.rho_min, model.knn.rho_max);
        }

        double best = -std::numeric_limits<double>::infinity();
        int best_idx = kNil;
        for (int j = 0; j < k; ++j) {
            const int s = nearest[static_cast<std::size_t>(j)].second;
            const double value =
                std::min(g.nodes[static_cast<std::size_t>(s)].cost, rho_t);
            if (value > best) {
                best = value;
                best_idx = s;
            }
        }
        const Node& winner = g.nodes[static_cast<std::size_t>(best_idx)];
        out[i] = {use_cluster_labels ? winner.cluster_label : winner.predicted_label, best,
                  best_idx};
    }
    return out;
}

} // namespace detail

/// Clusters X by sweeping k = 1..k_max over kNN graphs, keeping the k with the
/// minimum normalized cut, and refitting at that k. Cluster ids are assigned
/// in root-discovery order, 0..n_clusters-1.
inline Fitted unsupervised_fit(const Matrix& X, int k_max,
                               DistanceMetric metric = DistanceMetric::log_squared_euclidean) {
    const auto started = std::chrono::steady_clock::now();
    const int n = static_cast<int>(X.rows());
    if (k_max < 2 || k_max >= n)
        throw ValueError("unsupervised_fit: k_max = " + std::to_string(k_max) +
                         " must satisfy 2 <= k_max < " + std::to_string(n));

    Fitted fitted;
    TrainedModel& model = fitted.model;
    model.variant = Variant::unsupervised;
    model.metric = metric;

    KnnSubgraph kg;
    kg.base = Subgraph::from_data(X);
    auto dist = detail::subgraph_distance(kg.base, metric);
    const NeighborCache cache(n, k_max, dist);

    int best_k = 0;
    double best_cut = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= k_max; ++k) {
        build_knn_adjacency(kg, k, cache);
        compute_density(kg);
        detail::density_conquest(kg, false);
        const double cut = detail::normalized_cut(kg);
        if (cut < best_cut) {
            best_cut = cut;
            best_k = k;
        }
    }

    build_knn_adjacency(kg, best_k, cache);
    compute_density(kg);
    detail::density_conquest(kg, false);

    model.knn = {best_k, kg.d_f, kg.rho_min, kg.rho_max, kg.n_clusters};
    model.graph = std::move(kg.base);

    fitted.report.k_best = best_k;
    fitted.report.n_clusters = kg.n_clusters;
    fitted.report.n_prototypes = kg.n_clusters; // one root per cluster
    fitted.report.training_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return fitted;
}

/// Assigns each row of X to a cluster of a fitted unsupervised model.
inline std::vector<Prediction> density_classify(const TrainedModel& model, const Matrix& X) {
    return detail::density_classify_impl(model, X,
                                         model.variant == Variant::unsupervised);
}

} // namespace opf
