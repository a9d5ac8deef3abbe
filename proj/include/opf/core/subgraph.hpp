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

#include <span>
#include <string>
#include <vector>

#include "opf/core/heap.hpp"
#include "opf/errors.hpp"
#include "opf/matrix.hpp"

namespace opf {

/// One sample plus everything the forest algorithms track about it.
/// true_label 0 means unlabeled; cluster_label is only meaningful after an
/// unsupervised fit.
struct Node {
    int idx = 0;
    std::vector<double> features;
    int true_label = 0;
    int predicted_label = 0;
    double cost = 0.0;    // path value of the optimum path ending here
    double density = 0.0; // normalized rho, in [1, 1000] once computed
    int predecessor = kNil;
    int root = 0;
    bool is_prototype = false;
    bool is_relevant = false;
    int cluster_label = 0;
};

struct Subgraph {
    std::vector<Node> nodes;
    int n_features = 0;
    bool trained = false;
    // Node indices sorted by ascending cost; filled by the f_max conquest and
    // consumed by the early-terminating classifier.
    std::vector<int> ordered_indices;

    int size() const { return static_cast<int>(nodes.size()); }

    std::span<const double> features_of(int i) const {
        return {nodes[static_cast<std::size_t>(i)].features.data(),
                nodes[static_cast<std::size_t>(i)].features.size()};
    }

    static Subgraph from_data(const Matrix& X, const std::vector<int>& labels) {
        if (!labels.empty() && labels.size() != X.rows())
            throw DimensionError("subgraph: " + std::to_string(X.rows()) + " samples but " +
                                 std::to_string(labels.size()) + " labels");
        Subgraph g;
        g.n_features = static_cast<int>(X.cols());
        g.nodes.resize(X.rows());
        for (std::size_t i = 0; i < X.rows(); ++i) {
            Node& nd = g.nodes[i];
            nd.idx = static_cast<int>(i);
            auto row = X.row(i);
            nd.features.assign(row.begin(), row.end());
            nd.true_label = labels.empty() ? 0 : labels[i];
            nd.root = nd.idx;
        }
        return g;
    }

    static Subgraph from_data(const Matrix& X) { return from_data(X, {}); }
};

/// Follows predecessors from `start` up to the root. Throws if the chain does
/// not reach a nil-predecessor node within |nodes| steps (i.e. it cycles).
inline std::vector<int> path_to_root(const Subgraph& g, int start) {
    std::vector<int> path;
    int cur = start;
    for (int steps = 0; steps <= g.size(); ++steps) {
        path.push_back(cur);
        const int pred = g.nodes[static_cast<std::size_t>(cur)].predecessor;
        if (pred == kNil) return path;
        cur = pred;
    }
    throw InvalidStateError("predecessor map cycles at node " + std::to_string(start));
}

inline bool predecessors_acyclic(const Subgraph& g) {
    try {
        for (int i = 0; i < g.size(); ++i) path_to_root(g, i);
    } catch (const InvalidStateError&) {
        return false;
    }
    return true;
}

} // namespace opf
