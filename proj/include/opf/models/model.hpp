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

#include <optional>
#include <string>
#include <vector>

#include "opf/core/knn_subgraph.hpp"
#include "opf/core/subgraph.hpp"
#include "opf/errors.hpp"
#include "opf/math/distance.hpp"

namespace opf {

inline constexpr int kModelFormatVersion = 1;

enum class Variant { supervised, knn_supervised, semi_supervised, unsupervised };

inline const char* variant_name(Variant v) {
    switch (v) {
        case Variant::supervised: return "supervised";
        case Variant::knn_supervised: return "knn_supervised";
        case Variant::semi_supervised: return "semi_supervised";
        case Variant::unsupervised: return "unsupervised";
    }
    return "?";
}

inline Variant variant_from_name(const std::string& name) {
    for (auto v : {Variant::supervised, Variant::knn_supervised, Variant::semi_supervised,
                   Variant::unsupervised})
        if (name == variant_name(v)) return v;
    throw ValueError("unknown model variant '" + name + "'");
}

/// Scalars a kNN-graph model needs at prediction time. The adjacency itself is
/// a training-time structure and is not retained.
struct KnnModelState {
    int k_best = 0;
    double d_f = 0.0;
    double rho_min = 0.0;
    double rho_max = 0.0;
    int n_clusters = 0;
};

/// A fitted classifier of any variant: the trained subgraph plus the metric
/// identifier and, for kNN-graph variants, the density-model scalars.
/// Immutable once fitted; predictions never modify it.
struct TrainedModel {
    int format_version = kModelFormatVersion;
    Variant variant = Variant::supervised;
    DistanceMetric metric = DistanceMetric::log_squared_euclidean;
    Subgraph graph;
    KnnModelState knn;

    bool uses_density() const {
        return variant == Variant::knn_supervised || variant == Variant::unsupervised;
    }
};

struct FitReport {
    double training_time_s = 0.0;
    int n_prototypes = 0;
    std::optional<int> k_best;
    std::optional<int> n_clusters;
    // Identical samples carrying different labels; self-classification is not
    // guaranteed for them.
    int n_conflicting_duplicates = 0;
    // Nodes that received an equal-cost offer with a different label during
    // conquest; their assignment is pinned by the heap tie-break.
    int n_label_ties = 0;
    std::optional<double> validation_accuracy;
};

struct Fitted {
    TrainedModel model;
    FitReport report;
};

/// One classified sample: the decided label, the optimum path value, and the
/// training node that furnished it.
struct Prediction {
    int label = 0;
    double cost = 0.0;
    int via = kNil;
};

namespace detail {

/// Train-side pairwise distance: either the metric on the fly or a lookup in
/// a precomputed matrix. Both routes must yield bit-identical values.
template <class GetRow>
class PairwiseDistance {
public:
    PairwiseDistance(DistanceMetric metric, GetRow rows, const DistanceMatrix* pre)
        : metric_(metric), rows_(rows), pre_(pre) {}

    double operator()(int i, int j) const {
        if (pre_) return pre_->at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        return distance(metric_, rows_(i), rows_(j));
    }

private:
    DistanceMetric metric_;
    GetRow rows_;
    const DistanceMatrix* pre_;
};

inline auto subgraph_distance(const Subgraph& g, DistanceMetric metric,
                              const DistanceMatrix* pre = nullptr) {
    auto rows = [&g](int i) { return g.features_of(i); };
    return PairwiseDistance<decltype(rows)>(metric, rows, pre);
}

/// Counts labeled samples that have an identical twin carrying a different
/// (non-zero) label.
inline int count_conflicting_duplicates(const Subgraph& g) {
    int count = 0;
    for (int i = 0; i < g.size(); ++i) {
        const Node& a = g.nodes[static_cast<std::size_t>(i)];
        if (a.true_label < 1) continue;
        bool conflicted = false;
        for (int j = 0; j < g.size() && !conflicted; ++j) {
            if (i == j) continue;
            const Node& b = g.nodes[static_cast<std::size_t>(j)];
            if (b.true_label < 1 || a.true_label == b.true_label) continue;
            conflicted = a.features == b.features;
        }
        if (conflicted) ++count;
    }
    return count;
}

} // namespace detail

} // namespace opf
