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

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "opf/errors.hpp"
#include "opf/matrix.hpp"

namespace opf {

/// Row = true label, column = predicted label, both 1-based classes.
struct ConfusionMatrix {
    int n_classes = 0;
    std::vector<std::vector<std::int64_t>> counts; // [true][pred], 0-based storage

    std::int64_t total() const {
        std::int64_t t = 0;
        for (const auto& row : counts)
            for (auto c : row) t += c;
        return t;
    }

    bool diagonal() const {
        for (int i = 0; i < n_classes; ++i)
            for (int j = 0; j < n_classes; ++j)
                if (i != j && counts[i][j] != 0) return false;
        return true;
    }
};

inline ConfusionMatrix confusion_matrix(const std::vector<int>& truth,
                                        const std::vector<int>& pred) {
    if (truth.size() != pred.size())
        throw DimensionError("confusion_matrix: truth has " + std::to_string(truth.size()) +
                             " labels, pred has " + std::to_string(pred.size()));
    if (truth.empty()) throw TooSmallError("confusion_matrix: empty label vectors");

    int c = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (truth[i] < 1 || pred[i] < 1)
            throw ValueError("confusion_matrix: labels must be >= 1 (sample " +
                             std::to_string(i) + ")");
        c = std::max({c, truth[i], pred[i]});
    }

    ConfusionMatrix cm;
    cm.n_classes = c;
    cm.counts.assign(c, std::vector<std::int64_t>(c, 0));
    for (std::size_t i = 0; i < truth.size(); ++i) ++cm.counts[truth[i] - 1][pred[i] - 1];
    return cm;
}

/// Balanced accuracy used throughout the OPF literature: per class i,
/// e_i1 = FP_i / (N - n_i) and e_i2 = FN_i / n_i, and the score is
/// 1 - sum(e_i1 + e_i2) / (2c). Every class in 1..c must occur in the truth.
inline double opf_accuracy(const std::vector<int>& truth, const std::vector<int>& pred) {
    const ConfusionMatrix cm = confusion_matrix(truth, pred);
    const int c = cm.n_classes;
    const auto n_total = static_cast<double>(truth.size());

    std::vector<std::int64_t> class_sizes(c, 0);
    for (int label : truth) ++class_sizes[label - 1];
    for (int i = 0; i < c; ++i)
        if (class_sizes[i] == 0)
            throw DegenerateClassError("opf_accuracy: class " + std::to_string(i + 1) +
                                       " never occurs in the truth labels");

    double error_sum = 0.0;
    for (int i = 0; i < c; ++i) {
        std::int64_t fp = 0; // others predicted as class i
        for (int t = 0; t < c; ++t)
            if (t != i) fp += cm.counts[t][i];
        std::int64_t fn = 0; // class i predicted as something else
        for (int p = 0; p < c; ++p)
            if (p != i) fn += cm.counts[i][p];

        const double others = n_total - static_cast<double>(class_sizes[i]);
        const double e1 = others > 0.0 ? static_cast<double>(fp) / others : 0.0;
        const double e2 = static_cast<double>(fn) / static_cast<double>(class_sizes[i]);
        error_sum += e1 + e2;
    }
    return 1.0 - error_sum / (2.0 * c);
}

/// Per-feature standardization: (x - mean) / std with the population std.
/// Zero-variance features pass through centered at 0.
inline Matrix normalize_features(const Matrix& X) {
    if (X.rows() < 2) throw TooSmallError("normalize_features: need at least 2 samples");
    Matrix out(X.rows(), X.cols());
    const auto n = static_cast<double>(X.rows());
    for (std::size_t j = 0; j < X.cols(); ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < X.rows(); ++i) mean += X.at(i, j);
        mean /= n;
        double var = 0.0;
        for (std::size_t i = 0; i < X.rows(); ++i) {
            const double d = X.at(i, j) - mean;
            var += d * d;
        }
        var /= n;
        const double sd = std::sqrt(var);
        for (std::size_t i = 0; i < X.rows(); ++i) {
            const double centered = X.at(i, j) - mean;
            out.at(i, j) = sd > 0.0 ? centered / sd : centered;
        }
    }
    return out;
}

} // namespace opf
