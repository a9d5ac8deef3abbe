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

// Clustering walkthrough: three point groups, best k swept automatically.

#include <cstdio>

#include "opf/opf.hpp"

int main() {
    opf::Matrix X;
    std::uint64_t stream = 33;
    for (double cx : {0.0, 8.0, 16.0}) {
        const auto xs = opf::rng_gaussian(cx, 1.0, 60, stream);
        const auto ys = opf::rng_gaussian(0.0, 1.0, 60, stream + 5);
        for (std::size_t i = 0; i < xs.size(); ++i)
            X.append_row(std::vector<double>{xs[i], ys[i]});
        stream += 10;
    }

    auto [model, report] = opf::unsupervised_fit(X, 20, opf::DistanceMetric::euclidean);
    std::printf("k_best = %d, clusters = %d\n", model.knn.k_best, model.knn.n_clusters);

    const auto assignments = opf::predict(model, opf::Matrix::from_rows(
                                                     {{0.2, 0.1}, {8.1, -0.2}, {15.8, 0.0}}));
    for (std::size_t i = 0; i < assignments.size(); ++i)
        std::printf("probe %zu -> cluster %d\n", i, assignments[i]);
    return 0;
}
