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
#include <cmath>
#include <concepts>
#include <numbers>
#include <vector>

#include "opf/core/subgraph.hpp"
#include "opf/errors.hpp"

namespace opf {

inline constexpr double kDensityFloor = 1.0;
inline constexpr double kDensityCeil = 1000.0;

struct Arc {
    int to = 0;
    double weight = 0.0;

    friend bool operator==(const Arc&, const Arc&) = default;
};

/// Subgraph whose arcs connect k-nearest neighbors. One-directional arcs get
/// their reverses added so density and path propagation see an undirected
/// graph; adjacency lists may therefore exceed k.
struct KnnSubgraph {
    Subgraph base;
    int k = 0;
    std::vector<std::vector<Arc>> adjacency;
    double d_f = 0.0; // maximum arc weight in the graph
    double rho_min = 0.0;
    double rho_max = 0.0;
    int n_clusters = 0;
};

/// Per-node nearest-neighbor lists up to k_max, sorted by (distance, index).
/// Computed once so a sweep over k = 1..k_max only takes prefixes.
class NeighborCache {
public:
    template <class Dist>
    NeighborCache(int n_nodes, int k_max, Dist&& dist) : k_max_(k_max) {
        neighbors_.resize(static_cast<std::size_t>(n_nodes));
        std::vector<std::pair<double, int>> all;
        for (int s = 0; s < n_nodes; ++s) {
            all.clear();
            all.reserve(static_cast<std::size_t>(n_nodes) - 1);
            for (int t = 0; t < n_nodes; ++t)
                if (t != s) all.emplace_back(dist(s, t), t);
            const auto keep = static_cast<std::size_t>(std::min(k_max, n_nodes - 1));
            std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(keep),
                              all.end());
            auto& row = neighbors_[static_cast<std::size_t>(s)];
            row.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(keep));
        }
    }

    int k_max() const { return k_max_; }

    /// The k nearest neighbors of s (ties resolved by lower index).
    std::span<const std::pair<double, int>> prefix(int s, int k) const {
        const auto& row = neighbors_[static_cast<std::size_t>(s)];
        return {row.data(), std::min(row.size(), static_cast<std::size_t>(k))};
    }

private:
    int k_max_;
    std::vector<std::vector<std::pair<double, int>>> neighbors_; // (distance, index)
};

/// Fills kg.adjacency with each node's k nearest neighbors plus the reverse of
/// any one-directional arc, sorts lists by neighbor index, and sets d_f.
inline void build_knn_adjacency(KnnSubgraph& kg, int k, const NeighborCache& cache) {
    const int n = kg.base.size();
    if (k < 1 || k >= n)
        throw ValueError("build_knn_adjacency: k = " + std::to_string(k) +
                         " must satisfy 1 <= k < " + std::to_string(n));
    if (k > cache.k_max())
        throw ValueError("build_knn_adjacency: k = " + std::to_string(k) +
                         " exceeds the cached neighborhood size " +
                         std::to_string(cache.k_max()));

    kg.k = k;
    kg.adjacency.assign(static_cast<std::size_t>(n), {});
    std::vector<std::vector<bool>> present(static_cast<std::size_t>(n),
                                           std::vector<bool>(static_cast<std::size_t>(n)));

    double d_f = 0.0;
    for (int s = 0; s < n; ++s) {
        for (const auto& [w, t] : cache.prefix(s, k)) {
            kg.adjacency[static_cast<std::size_t>(s)].push_back({t, w});
            present[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)] = true;
            d_f = std::max(d_f, w);
        }
    }
    // Symmetrize: plateau roots must be reachable from their neighbors.
    for (int s = 0; s < n; ++s) {
        for (const Arc& a : kg.adjacency[static_cast<std::size_t>(s)]) {
            if (!present[static_cast<std::size_t>(a.to)][static_cast<std::size_t>(s)]) {
                present[static_cast<std::size_t>(a.to)][static_cast<std::size_t>(s)] = true;
                kg.adjacency[static_cast<std::size_t>(a.to)].push_back({s, a.weight});
            }
        }
    }
    for (auto& arcs : kg.adjacency)
        std::sort(arcs.begin(), arcs.end(),
                  [](const Arc& a, const Arc& b) { return a.to < b.to; });
    kg.d_f = d_f;
}

template <class Dist>
    requires std::invocable<Dist&, int, int>
void build_knn_adjacency(KnnSubgraph& kg, int k, Dist&& dist) {
    const int n = kg.base.size();
    if (k < 1 || k >= n)
        throw ValueError("build_knn_adjacency: k = " + std::to_string(k) +
                         " must satisfy 1 <= k < " + std::to_string(n));
    const NeighborCache cache(n, k, dist);
    build_knn_adjacency(kg, k, cache);
}

/// Linear map of a raw density onto [1, 1000] given the training bounds.
/// The ratio is formed first so the training extremes land exactly on 1 and
/// 1000.
inline double scale_density(double raw, double rho_min, double rho_max) {
    if (rho_max <= rho_min) return kDensityCeil;
    const double ratio = (raw - rho_min) / (rho_max - rho_min);
    return kDensityFloor + (kDensityCeil - kDensityFloor) * ratio;
}

/// Parzen-window density over the kNN arcs with an isotropic Gaussian kernel,
/// sigma = d_f / 3, then a linear rescale onto [1, 1000]. A constant raw
/// density field (including the d_f = 0 case) maps every node to 1000.
inline void compute_density(KnnSubgraph& kg) {
    const int n = kg.base.size();
    if (kg.adjacency.size() != static_cast<std::size_t>(n))
        throw InvalidStateError("compute_density: adjacency not built");

    if (kg.d_f == 0.0) {
        kg.rho_min = 0.0;
        kg.rho_max = 0.0;
        for (Node& nd : kg.base.nodes) nd.density = kDensityCeil;
        return;
    }

    const double sigma = kg.d_f / 3.0;
    const double two_sigma_sq = 2.0 * sigma * sigma;
    const double norm = std::sqrt(std::numbers::pi * two_sigma_sq);

    std::vector<double> raw(static_cast<std::size_t>(n), 0.0);
    for (int s = 0; s < n; ++s) {
        const auto& arcs = kg.adjacency[static_cast<std::size_t>(s)];
        double sum = 0.0;
        for (const Arc& a : arcs) sum += std::exp(-(a.weight * a.weight) / two_sigma_sq);
        raw[static_cast<std::size_t>(s)] = sum / (norm * static_cast<double>(arcs.size()));
    }

    const auto [lo, hi] = std::minmax_element(raw.begin(), raw.end());
    kg.rho_min = *lo;
    kg.rho_max = *hi;
    for (int s = 0; s < n; ++s)
        kg.base.nodes[static_cast<std::size_t>(s)].density =
            scale_density(raw[static_cast<std::size_t>(s)], kg.rho_min, kg.rho_max);
}

} // namespace opf
