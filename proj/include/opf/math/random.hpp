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
#include <numbers>
#include <vector>

#include "opf/errors.hpp"

namespace opf {

/// SplitMix64 (Steele, Lea & Flood): 64-bit state advanced by the golden-ratio
/// increment, output finalized with two xor-shift-multiply rounds. Splits and
/// shuffles must reproduce bit-for-bit across platforms, so the library never
/// uses the platform's default generator.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1), built from the top 53 bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform index in [0, n). n must be positive.
    std::size_t below(std::size_t n) {
        auto idx = static_cast<std::size_t>(next_double() * static_cast<double>(n));
        return idx < n ? idx : n - 1;
    }

    /// In-place Fisher-Yates shuffle driven by this stream.
    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = below(i);
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::uint64_t state_;
};

inline std::vector<double> rng_uniform(double low, double high, std::size_t n,
                                       std::uint64_t seed) {
    if (!(low < high)) throw ValueError("rng_uniform: low must be < high");
    if (n < 1) throw ValueError("rng_uniform: n must be >= 1");
    SplitMix64 rng(seed);
    std::vector<double> out(n);
    for (auto& x : out) {
        x = low + rng.next_double() * (high - low);
        if (x >= high) x = std::nextafter(high, low);
    }
    return out;
}

/// Gaussian samples via Box-Muller on the SplitMix64 stream.
inline std::vector<double> rng_gaussian(double mean, double variance, std::size_t n,
                                        std::uint64_t seed) {
    if (variance < 0.0) throw ValueError("rng_gaussian: variance must be >= 0");
    if (n < 1) throw ValueError("rng_gaussian: n must be >= 1");
    SplitMix64 rng(seed);
    const double sd = std::sqrt(variance);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; i += 2) {
        double u1 = 1.0 - rng.next_double(); // (0, 1], keeps log finite
        double u2 = rng.next_double();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * std::numbers::pi * u2;
        out[i] = mean + sd * (r * std::cos(a));
        if (i + 1 < n) out[i + 1] = mean + sd * (r * std::sin(a));
    }
    return out;
}

} // namespace opf
