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

#include "opf/core/mst.hpp"
#include "opf/errors.hpp"
#include "opf/matrix.hpp"
#include "opf/models/model.hpp"
#include "opf/models/supervised.hpp"

namespace opf {

/// Semi-supervised fit, minimal reading: prototypes are elected by an MST over
/// the labeled samples only, then the f_max conquest runs over the union graph
/// of labeled + unlabeled nodes, so unlabeled nodes inherit the label of the
/// conquering root. The fitted model classifies test data over the full union.
/// With zero unlabeled samples this reduces exactly to supervised_fit.
inline Fitted semi_supervised_fit(const Matrix& X_lab, const std::vector<int>& y_lab,
                                  const Matrix& X_unlab,
                                  DistanceMetric metric = DistanceMetric::log_squared_euclidean) {
    const auto started = std::chrono::steady_clock::now();
    if (X_lab.rows() != y_lab.size())
        throw DimensionError("semi_supervised_fit: " + std::to_string(X_lab.rows()) +
                             " labeled samples but " + std::to_string(y_lab.size()) +
                             " labels");
    if (X_lab.rows() < 2)
        throw TooSmallError("semi_supervised_fit: need at least 2 labeled samples");
    if (!X_unlab.empty() && X_unlab.cols() != X_lab.cols())
        throw DimensionError("semi_supervised_fit: labeled/unlabeled feature widths differ");
    for (std::size_t i = 0; i < y_lab.size(); ++i)
        if (y_lab[i] < 1)
            throw ValueError("semi_supervised_fit: labeled sample " + std::to_string(i) +
                             " has label 0");

    // Prototypes come from the labeled part alone.
    Subgraph labeled = Subgraph::from_data(X_lab, y_lab);
    auto labeled_dist = detail::subgraph_distance(labeled, metric);
    const auto prototypes = mst_prototypes(labeled, labeled_dist);

    Fitted fitted;
    TrainedModel& model = fitted.model;
    model.variant = Variant::semi_supervised;
    model.metric = metric;

    Subgraph& g = model.graph;
    g.n_features = static_cast<int>(X_lab.cols());
    g.nodes.reserve(X_lab.rows() + X_unlab.rows());
    for (Node& nd : labeled.nodes) g.nodes.push_back(std::move(nd));
    for (std::size_t i = 0; i < X_unlab.rows(); ++i) {
        Node nd;
        nd.idx = static_cast<int>(g.nodes.size());
        auto row = X_unlab.row(i);
        nd.features.assign(row.begin(), row.end());
        nd.true_label = 0;
        nd.root = nd.idx;
        g.nodes.push_back(std::move(nd));
    }

    auto dist = detail::subgraph_distance(g, metric);
    detail::fmax_conquest(g, dist, fitted.report);

    fitted.report.n_prototypes = static_cast<int>(prototypes.size());
    fitted.report.n_conflicting_duplicates = detail::count_conflicting_duplicates(g);
    fitted.report.training_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return fitted;
}

} // namespace opf
