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

#include <vector>

#include "opf/matrix.hpp"
#include "opf/models/model.hpp"
#include "opf/models/supervised.hpp"
#include "opf/models/unsupervised.hpp"

namespace opf {

/// Classifies X with any model variant. Path-cost models use the minimax
/// scan; density models use the k-nearest density rule. For unsupervised
/// models the returned labels are cluster ids.
inline std::vector<Prediction> predict_detailed(const TrainedModel& model, const Matrix& X) {
    if (model.uses_density()) return density_classify(model, X);
    return path_cost_classify(model, X);
}

inline std::vector<int> predict(const TrainedModel& model, const Matrix& X) {
    const auto preds = predict_detailed(model, X);
    std::vector<int> labels(preds.size());
    for (std::size_t i = 0; i < preds.size(); ++i) labels[i] = preds[i].label;
    return labels;
}

} // namespace opf
