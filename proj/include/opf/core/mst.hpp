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

#include <limits>
#include <set>
#include <vector>

#include "opf/core/heap.hpp"
#include "opf/core/subgraph.hpp"
#include "opf/errors.hpp"

namespace opf {

/// Prim's algorithm over the implicit complete graph, O(n^2) with the cost
/// heap. Returns the tree as a predecessor array (root 0 has predecessor nil).
/// `dist(i, j)` supplies the edge weight between nodes i and j.
template <class Dist>
std::vector<int> prim_mst(const Subgraph& g, Dist&& dist) {
    const int n = g.size();
    if (n < 2) throw TooSmallError("prim_mst: need at least 2 nodes");

    std::vector<int> pred(static_cast<std::size_t>(n), kNil);
    CostHeap heap(n, HeapPolicy::min);
    heap.insert(0, 0.0);
    for (int i = 1; i < n; ++i) heap.insert(i, std::numeric_limits<double>::infinity());

    while (!heap.empty()) {
        const int s = heap.extract();
        for (int t = 0; t < n; ++t) {
            if (t == s || heap.color(t) == HeapColor::black) continue;
            const double w = dist(s, t);
            if (w < heap.cost(t)) {
                pred[static_cast<std::size_t>(t)] = s;
                heap.update(t, w);
            }
        }
    }
    return pred;
}

/// Elects prototypes: both endpoints of every MST edge whose true labels
/// differ. Marks is_prototype on the nodes and returns the sorted index set.
template <class Dist>
std::vector<int> mst_prototypes(Subgraph& g, Dist&& dist) {
    const int n = g.size();
    if (n < 2) throw TooSmallError("mst_prototypes: need at least 2 nodes");

    std::set<int> labels_seen;
    for (const Node& nd : g.nodes) {
        if (nd.true_label < 1)
            throw ValueError("mst_prototypes: node " + std::to_string(nd.idx) +
                             " is unlabeled");
        labels_seen.insert(nd.true_label);
    }
    if (labels_seen.size() < 2)
        throw SingleClassError("mst_prototypes: all nodes share one class");

    const std::vector<int> pred = prim_mst(g, dist);

    std::set<int> prototypes;
    for (int t = 0; t < n; ++t) {
        const int s = pred[static_cast<std::size_t>(t)];
        if (s == kNil) continue;
        if (g.nodes[static_cast<std::size_t>(s)].true_label !=
            g.nodes[static_cast<std::size_t>(t)].true_label) {
            prototypes.insert(s);
            prototypes.insert(t);
        }
    }

    for (int p : prototypes) g.nodes[static_cast<std::size_t>(p)].is_prototype = true;
    return {prototypes.begin(), prototypes.end()};
}

} // namespace opf
