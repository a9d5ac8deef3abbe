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

#include <cstdint>
#include <set>
#include <vector>

#include "opf/errors.hpp"
#include "opf/math/metrics.hpp"
#include "opf/math/random.hpp"
#include "opf/matrix.hpp"
#include "opf/models/model.hpp"
#include "opf/models/supervised.hpp"

namespace opf {

inline constexpr double kDefaultPruneMaxLoss = 0.01;
inline constexpr int kDefaultPruneIterations = 10;

namespace detail {

inline std::vector<int> predicted_labels(const TrainedModel& model, const Matrix& X) {
    const auto preds = path_cost_classify(model, X);
    std::vector<int> labels(preds.size());
    for (std::size_t i = 0; i < preds.size(); ++i) labels[i] = preds[i].label;
    return labels;
}

} // namespace detail

/// Iterated supervised training: after each fit, every misclassified
/// validation sample trades places with a random non-prototype training sample
/// (same class when one exists), and the best-accuracy model across iterations
/// is kept. Stops early at accuracy 1.0. The swap stream comes from
/// SplitMix64(seed), so runs are bit-reproducible.
inline Fitted learn(const Matrix& X_tr, const std::vector<int>& y_tr, const Matrix& X_val,
                    const std::vector<int>& y_val, int n_iterations,
                    DistanceMetric metric = DistanceMetric::log_squared_euclidean,
                    std::uint64_t seed = 0) {
    if (n_iterations < 1) throw ValueError("learn: n_iterations must be >= 1");
    if (X_val.rows() != y_val.size() || X_val.rows() < 1)
        throw DimensionError("learn: bad validation set");

    Matrix tr = X_tr;
    std::vector<int> ytr = y_tr;
    Matrix val = X_val;
    std::vector<int> yval = y_val;
    SplitMix64 rng(seed);

    Fitted best;
    double best_acc = -1.0;
    for (int it = 0; it < n_iterations; ++it) {
        Fitted f = supervised_fit(tr, ytr, metric);
        const auto labels = detail::predicted_labels(f.model, val);
        const double acc = opf_accuracy(yval, labels);
        if (acc > best_acc) {
            best_acc = acc;
            best = f;
        }
        if (acc == 1.0 || it == n_iterations - 1) break;

        std::vector<int> non_prototypes;
        for (int i = 0; i < f.model.graph.size(); ++i)
            if (!f.model.graph.nodes[static_cast<std::size_t>(i)].is_prototype)
                non_prototypes.push_back(i);

        for (std::size_t v = 0; v < yval.size(); ++v) {
            if (labels[v] == yval[v]) continue;
            std::vector<int> same_class;
            for (int i : non_prototypes)
                if (ytr[static_cast<std::size_t>(i)] == yval[v]) same_class.push_back(i);
            const auto& pool = same_class.empty() ? non_prototypes : same_class;
            if (pool.empty()) continue; // everything is a prototype
            const int j = pool[rng.below(pool.size())];
            tr.swap_row(static_cast<std::size_t>(j), val.row(v));
            std::swap(ytr[static_cast<std::size_t>(j)], yval[v]);
        }
    }
    best.report.validation_accuracy = best_acc;
    return best;
}

/// Learning from mistakes: misclassified validation samples are absorbed into
/// the training set and the model is refitted, until the validation set is
/// classified perfectly or exhausted. The training set grows monotonically.
inline Fitted agglomerative_learn(const Matrix& X_tr, const std::vector<int>& y_tr,
                                  const Matrix& X_val, const std::vector<int>& y_val,
                                  DistanceMetric metric = DistanceMetric::log_squared_euclidean) {
    Matrix tr = X_tr;
    std::vector<int> ytr = y_tr;
    Matrix val = X_val;
    std::vector<int> yval = y_val;

    while (true) {
        Fitted f = supervised_fit(tr, ytr, metric);
        if (val.rows() == 0) return f;

        const auto labels = detail::predicted_labels(f.model, val);
        std::vector<std::size_t> wrong;
        for (std::size_t v = 0; v < yval.size(); ++v)
            if (labels[v] != yval[v]) wrong.push_back(v);
        if (wrong.empty()) {
            f.report.validation_accuracy = opf_accuracy(yval, labels);
            return f;
        }
        for (auto it = wrong.rbegin(); it != wrong.rend(); ++it) {
            tr.append_row(val.row(*it));
            ytr.push_back(yval[*it]);
            val.remove_row(*it);
            yval.erase(yval.begin() + static_cast<std::ptrdiff_t>(*it));
        }
    }
}

/// Drops training nodes that never appear on a chosen optimum path of a
/// validation sample, refitting until the balanced validation accuracy falls
/// below baseline - max_loss (that step is reverted), no node can be dropped,
/// or the iteration budget runs out.
inline Fitted prune(const Matrix& X_tr, const std::vector<int>& y_tr, const Matrix& X_val,
                    const std::vector<int>& y_val, double max_loss = kDefaultPruneMaxLoss,
                    int n_iterations = kDefaultPruneIterations,
                    DistanceMetric metric = DistanceMetric::log_squared_euclidean) {
    if (!(max_loss >= 0.0 && max_loss < 1.0))
        throw ValueError("prune: max_loss must lie in [0, 1)");
    if (n_iterations < 1) throw ValueError("prune: n_iterations must be >= 1");
    if (X_val.rows() != y_val.size() || X_val.rows() < 1)
        throw DimensionError("prune: bad validation set");

    Matrix tr = X_tr;
    std::vector<int> ytr = y_tr;

    Fitted fit = supervised_fit(tr, ytr, metric);
    auto preds = path_cost_classify(fit.model, X_val);
    std::vector<int> labels(preds.size());
    for (std::size_t i = 0; i < preds.size(); ++i) labels[i] = preds[i].label;
    const double baseline = opf_accuracy(y_val, labels);
    double acc = baseline;

    for (int it = 0; it < n_iterations; ++it) {
        // Mark every node on some sample's chosen optimum path.
        for (const Prediction& p : preds)
            for (int node : path_to_root(fit.model.graph, p.via))
                fit.model.graph.nodes[static_cast<std::size_t>(node)].is_relevant = true;

        std::vector<int> keep;
        std::set<int> kept_labels;
        for (int i = 0; i < fit.model.graph.size(); ++i) {
            if (fit.model.graph.nodes[static_cast<std::size_t>(i)].is_relevant) {
                keep.push_back(i);
                kept_labels.insert(ytr[static_cast<std::size_t>(i)]);
            }
        }
        if (keep.size() == tr.rows()) break;       // nothing to drop
        if (keep.size() < 2 || kept_labels.size() < 2) break; // cannot refit

        Matrix tr2;
        std::vector<int> ytr2;
        for (int i : keep) {
            tr2.append_row(tr.row(static_cast<std::size_t>(i)));
            ytr2.push_back(ytr[static_cast<std::size_t>(i)]);
        }

        Fitted cand = supervised_fit(tr2, ytr2, metric);
        auto cand_preds = path_cost_classify(cand.model, X_val);
        for (std::size_t i = 0; i < cand_preds.size(); ++i) labels[i] = cand_preds[i].label;
        const double cand_acc = opf_accuracy(y_val, labels);
        if (cand_acc < baseline - max_loss) break; // revert: keep the previous fit

        fit = std::move(cand);
        preds = std::move(cand_preds);
        tr = std::move(tr2);
        ytr = std::move(ytr2);
        acc = cand_acc;
    }

    fit.report.validation_accuracy = acc;
    return fit;
}

} // namespace opf
