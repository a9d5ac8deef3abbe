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
#include <vector>

#include "opf/errors.hpp"
#include "opf/matrix.hpp"

namespace opf {

/// Samples as they travel through load / split / convert: ids, labels
/// (0 = unlabeled) and an n x m feature matrix. n_classes comes from file
/// headers and may exceed max(labels).
struct Dataset {
    std::vector<int> ids;
    std::vector<int> labels;
    Matrix features;
    int n_classes = 0;

    std::size_t size() const { return ids.size(); }
    std::size_t n_features() const { return features.cols(); }

    int max_label() const {
        int m = 0;
        for (int l : labels) m = std::max(m, l);
        return m;
    }

    void validate() const {
        if (ids.size() != labels.size() || ids.size() != features.rows())
            throw DimensionError("dataset: ids/labels/features sizes disagree");
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (labels[i] < 0)
                throw ValueError("dataset: negative label at sample " + std::to_string(i));
            if (ids[i] < 0)
                throw ValueError("dataset: negative id at sample " + std::to_string(i));
        }
    }

    /// True when ids are exactly a permutation of 0..n-1.
    bool ids_are_permutation() const {
        std::vector<bool> seen(ids.size(), false);
        for (int id : ids) {
            if (id < 0 || static_cast<std::size_t>(id) >= ids.size() ||
                seen[static_cast<std::size_t>(id)])
                return false;
            seen[static_cast<std::size_t>(id)] = true;
        }
        return true;
    }

    void reindex_ids() {
        for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
    }

    friend bool operator==(const Dataset& a, const Dataset& b) {
        return a.ids == b.ids && a.labels == b.labels && a.features == b.features &&
               a.n_classes == b.n_classes;
    }
};

} // namespace opf
