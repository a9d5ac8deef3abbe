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
#include <numeric>
#include <utility>
#include <vector>

#include "opf/dataset/dataset.hpp"
#include "opf/errors.hpp"
#include "opf/math/random.hpp"

namespace opf {

namespace detail {

/// round-half-to-even; n * 0.5 ties are common enough to pin the rule.
inline long long round_half_even(double x) {
    const double floor = std::floor(x);
    const double frac = x - floor;
    if (frac > 0.5) return static_cast<long long>(floor) + 1;
    if (frac < 0.5) return static_cast<long long>(floor);
    const auto f = static_cast<long long>(floor);
    return (f % 2 == 0) ? f : f + 1;
}

} // namespace detail

/// Deterministic non-stratified split: Fisher-Yates shuffle seeded by
/// random_state, then the first round(percentage * n) rows form the first
/// part. Rows keep their original ids.
inline std::pair<Dataset, Dataset> split_dataset(const Dataset& ds, double percentage,
                                                 std::uint64_t random_state) {
    ds.validate();
    const auto n = static_cast<long long>(ds.size());
    if (n < 2) throw TooSmallError("split: need at least 2 samples");
    if (!(percentage > 0.0 && percentage < 1.0))
        throw ValueError("split: percentage must lie in (0, 1)");

    const long long n_first = detail::round_half_even(percentage * static_cast<double>(n));
    if (n_first < 1 || n - n_first < 1)
        throw ValueError("split: percentage " + std::to_string(percentage) +
                         " leaves an empty part for n = " + std::to_string(n));

    std::vector<std::size_t> order(ds.size());
    std::iota(order.begin(), order.end(), 0);
    SplitMix64 rng(random_state);
    rng.shuffle(order);

    auto take = [&](std::size_t begin, std::size_t end) {
        Dataset part;
        part.n_classes = ds.n_classes;
        for (std::size_t i = begin; i < end; ++i) {
            const std::size_t src = order[i];
            part.ids.push_back(ds.ids[src]);
            part.labels.push_back(ds.labels[src]);
            part.features.append_row(ds.features.row(src));
        }
        return part;
    };
    return {take(0, static_cast<std::size_t>(n_first)),
            take(static_cast<std::size_t>(n_first), ds.size())};
}

} // namespace opf
