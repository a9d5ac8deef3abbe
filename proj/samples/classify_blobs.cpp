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

// Minimal supervised walkthrough: build two labeled blobs, fit, predict,
// score. Run it from the build tree; it needs no input files.

#include <cstdio>

#include "opf/opf.hpp"

int main() {
    // Two 1-D Gaussian classes around 0 and 8.
    opf::Matrix X;
    std::vector<int> y;
    for (double v : opf::rng_gaussian(0.0, 1.0, 40, 1)) {
        X.append_row(std::vector<double>{v});
        y.push_back(1);
    }
    for (double v : opf::rng_gaussian(8.0, 1.0, 40, 2)) {
        X.append_row(std::vector<double>{v});
        y.push_back(2);
    }

    auto [model, report] = opf::supervised_fit(X, y);
    std::printf("fitted %d nodes with %d prototypes in %.3f s\n", model.graph.size(),
                report.n_prototypes, report.training_time_s);

    opf::Matrix probes = opf::Matrix::from_rows({{-0.5}, {1.5}, {6.5}, {8.2}});
    const auto labels = opf::predict(model, probes);
    for (std::size_t i = 0; i < labels.size(); ++i)
        std::printf("probe %.1f -> class %d\n", probes.at(i, 0), labels[i]);

    const double training_accuracy = opf::opf_accuracy(y, opf::predict(model, X));
    std::printf("training accuracy: %.3f\n", training_accuracy);
    return 0;
}
