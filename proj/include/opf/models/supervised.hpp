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
#include <limits>
#include <vector>

#include "opf/core/heap.hpp"
#include "opf/core/mst.hpp"
#include "opf/core/subgraph.hpp"
#include "opf/errors.hpp"
#include "opf/math/distance.hpp"
#include "opf/matrix.hpp"
#include "opf/models/model.hpp"

namespace opf {

namespace detail {

/// f_max conquest over the implicit complete graph. Prototypes start at cost
/// 0, everything else at +inf; each extraction relaxes every remaining node
/// with max(cost[s], d(s, t)). Fills costs, predecessors, roots, propagated
/// labels and the extraction order (= ordered_indices, ascending cost).
template <class Dist>
void fmax_conquest(Subgraph& g, Dist&& dist, FitReport& report) {
    const int n = g.size();
    CostHeap heap(n, HeapPolicy::min);
    std::vector<bool> tie_flag(static_cast<std::size_t>(n), false);

    for (Node& nd : g.nodes) {
        if (nd.is_prototype) {
            nd.cost = 0.0;
            nd.predecessor = kNil;
            nd.root = nd.idx;
            nd.predicted_label = nd.true_label;
        } else {
            nd.cost = std::numeric_limits<double>::infinity();
            nd.predecessor = kNil;
            nd.root = nd.idx;
            nd.predicted_label = 0;
        }
        heap.insert(nd.idx, nd.cost);
    }

    g.ordered_indices.clear();
    g.ordered_indices.reserve(static_cast<std::size_t>(n));
    while (!heap.empty()) {
        const int s = heap.extract();
        Node& src = g.nodes[static_cast<std::size_t>(s)];
        g.ordered_indices.push_back(s);

        for (int t = 0; t < n; ++t) {
            if (t == s || heap.color(t) == HeapColor::black) continue;
            Node& dst = g.nodes[static_cast<std::size_t>(t)];
            if (src.cost >= dst.cost) continue;
            const double cost = std::max(src.cost, dist(s, t));
            if (cost < dst.cost) {
                dst.cost = cost;
                dst.predecessor = s;
                dst.root = src.root;
                dst.predicted_label = src.predicted_label;
                heap.update(t, cost);
            } else if (cost == dst.cost && src.predicted_label != dst.predicted_label) {
                tie_flag[static_cast<std::size_t>(t)] = true;
            }
        }
    }

    for (bool f : tie_flag)
        if (f) ++report.n_label_ties;
    g.trained = true;
}

} // namespace detail

/// Trains the complete-graph supervised classifier: MST frontier prototypes,
/// then the f_max conquest. Passing a precomputed n x n matrix for the same
/// metric produces a bit-identical model.
inline Fitted supervised_fit(const Matrix& X, const std::vector<int>& y,
                             DistanceMetric metric = DistanceMetric::log_squared_euclidean,
                             const DistanceMatrix* precomputed = nullptr) {
    const auto started = std::chrono::steady_clock::now();
    if (X.rows() != y.size())
        throw DimensionError("supervised_fit: " + std::to_string(X.rows()) + " samples but " +
                             std::to_string(y.size()) + " labels");
    if (X.rows() < 2) throw TooSmallError("supervised_fit: need at least 2 samples");
    if (precomputed && precomputed->size() != X.rows())
        throw DimensionError("supervised_fit: precomputed matrix is " +
                             std::to_string(precomputed->size()) + "x" +
                             std::to_string(precomputed->size()) + " but there are " +
                             std::to_string(X.rows()) + " samples");

    Fitted fitted;
    TrainedModel& model = fitted.model;
    model.variant = Variant::supervised;
    model.metric = metric;
    model.graph = Subgraph::from_data(X, y);

    auto dist = detail::subgraph_distance(model.graph, metric, precomputed);
    const auto prototypes = mst_prototypes(model.graph, dist);
    detail::fmax_conquest(model.graph, dist, fitted.report);

    fitted.report.n_prototypes = static_cast<int>(prototypes.size());
    fitted.report.n_conflicting_duplicates =
        detail::count_conflicting_duplicates(model.graph);
    fitted.report.training_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return fitted;
}

/// Classifies each row of X against a path-cost model (supervised or
/// semi-supervised): cost = min over training nodes s of max(C(s), d(s, t)).
/// Walks ordered_indices and stops as soon as the best cost so far is <= the
/// next stored cost; equal to the full scan because max(C(s), d) >= C(s).
inline std::vector<Prediction> path_cost_classify(const TrainedModel& model, const Matrix& X) {
    const Subgraph& g = model.graph;
    if (!g.trained) throw InvalidStateError("predict on an untrained model");
    if (static_cast<int>(X.cols()) != g.n_features)
        throw DimensionError("predict: model has " + std::to_string(g.n_features) +
                             " features, data has " + std::to_string(X.cols()));

    std::vector<Prediction> out(X.rows());
    for (std::size_t i = 0; i < X.rows(); ++i) {
        const auto sample = X.row(i);
        double best = std::numeric_limits<double>::infinity();
        int best_idx = kNil;
        for (int s : g.ordered_indices) {
            const Node& nd = g.nodes[static_cast<std::size_t>(s)];
            if (best <= nd.cost) break;
            const double cost = std::max(nd.cost, distance(model.metric, sample,
                                                           g.features_of(s)));
            if (cost < best) {
                best = cost;
                best_idx = s;
            }
        }
        out[i] = {g.nodes[static_cast<std::size_t>(best_idx)].predicted_label, best, best_idx};
    }
    return out;
}

} // namespace opf
