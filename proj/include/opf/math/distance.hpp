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
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "opf/detail/binary.hpp"
#include "opf/errors.hpp"
#include "opf/matrix.hpp"

namespace opf {

enum class DistanceMetric {
    euclidean,
    squared_euclidean,
    log_squared_euclidean,
    manhattan,
    chebyshev,
    canberra,
    chi_squared,
    cosine,
};

/// Scale constant of log_squared_euclidean. Inherited from the original C
/// implementation's integer-arc-weight convention; values stay real here.
inline constexpr double kLogSquaredEuclideanScale = 1e5;

inline const char* metric_name(DistanceMetric m) {
    switch (m) {
        case DistanceMetric::euclidean: return "euclidean";
        case DistanceMetric::squared_euclidean: return "squared_euclidean";
        case DistanceMetric::log_squared_euclidean: return "log_squared_euclidean";
        case DistanceMetric::manhattan: return "manhattan";
        case DistanceMetric::chebyshev: return "chebyshev";
        case DistanceMetric::canberra: return "canberra";
        case DistanceMetric::chi_squared: return "chi_squared";
        case DistanceMetric::cosine: return "cosine";
    }
    return "?";
}

inline DistanceMetric metric_from_name(const std::string& name) {
    for (auto m : {DistanceMetric::euclidean, DistanceMetric::squared_euclidean,
                   DistanceMetric::log_squared_euclidean, DistanceMetric::manhattan,
                   DistanceMetric::chebyshev, DistanceMetric::canberra,
                   DistanceMetric::chi_squared, DistanceMetric::cosine}) {
        if (name == metric_name(m)) return m;
    }
    throw ValueError("unknown distance metric '" + name + "'");
}

namespace detail {

inline double squared_euclidean_sum(std::span<const double> u, std::span<const double> v) {
    double sum = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double d = u[i] - v[i];
        sum += d * d;
    }
    return sum;
}

} // namespace detail

/// Distance between two equal-length feature vectors under the given metric.
/// canberra and chi_squared treat 0/0 terms as 0; cosine is undefined for a
/// zero-norm vector.
inline double distance(DistanceMetric metric, std::span<const double> u,
                       std::span<const double> v) {
    if (u.size() != v.size())
        throw DimensionError("distance: vectors of length " + std::to_string(u.size()) +
                             " and " + std::to_string(v.size()));
    if (u.empty()) throw DimensionError("distance: empty vectors");

    switch (metric) {
        case DistanceMetric::euclidean:
            return std::sqrt(detail::squared_euclidean_sum(u, v));
        case DistanceMetric::squared_euclidean:
            return detail::squared_euclidean_sum(u, v);
        case DistanceMetric::log_squared_euclidean:
            return kLogSquaredEuclideanScale *
                   std::log(detail::squared_euclidean_sum(u, v) + 1.0);
        case DistanceMetric::manhattan: {
            double sum = 0.0;
            for (std::size_t i = 0; i < u.size(); ++i) sum += std::fabs(u[i] - v[i]);
            return sum;
        }
        case DistanceMetric::chebyshev: {
            double best = 0.0;
            for (std::size_t i = 0; i < u.size(); ++i)
                best = std::max(best, std::fabs(u[i] - v[i]));
            return best;
        }
        case DistanceMetric::canberra: {
            double sum = 0.0;
            for (std::size_t i = 0; i < u.size(); ++i) {
                const double den = std::fabs(u[i]) + std::fabs(v[i]);
                if (den != 0.0) sum += std::fabs(u[i] - v[i]) / den;
            }
            return sum;
        }
        case DistanceMetric::chi_squared: {
            double sum = 0.0;
            for (std::size_t i = 0; i < u.size(); ++i) {
                const double den = u[i] + v[i];
                if (den != 0.0) {
                    const double d = u[i] - v[i];
                    sum += (d * d) / den;
                }
            }
            return 0.5 * sum;
        }
        case DistanceMetric::cosine: {
            double dot = 0.0, nu = 0.0, nv = 0.0;
            for (std::size_t i = 0; i < u.size(); ++i) {
                dot += u[i] * v[i];
                nu += u[i] * u[i];
                nv += v[i] * v[i];
            }
            if (nu == 0.0 || nv == 0.0)
                throw UndefinedMetricError("cosine distance undefined for a zero vector");
            return std::max(0.0, 1.0 - dot / (std::sqrt(nu) * std::sqrt(nv)));
        }
    }
    throw ValueError("distance: unknown metric");
}

inline double distance(DistanceMetric metric, std::initializer_list<double> u,
                        std::initializer_list<double> v) {
    return distance(metric, std::span<const double>(u.begin(), u.size()),
                    std::span<const double>(v.begin(), v.size()));
}

/// Full pairwise matrix of sample distances. Symmetric metrics evaluate
/// identically under argument swap, so only the upper triangle is computed
/// and mirrored; the result is bit-identical to computing each entry directly.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    explicit DistanceMatrix(std::size_t n) : n_(n), entries_(n * n, 0.0) {}

    std::size_t size() const { return n_; }
    double at(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
    double& at(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }

private:
    std::size_t n_ = 0;
    std::vector<double> entries_;
};

inline DistanceMatrix pre_compute_distances(const Matrix& X, DistanceMetric metric) {
    if (X.rows() < 1) throw TooSmallError("pre_compute_distances: need at least 1 sample");
    DistanceMatrix dm(X.rows());
    for (std::size_t i = 0; i < X.rows(); ++i) {
        for (std::size_t j = i + 1; j < X.rows(); ++j) {
            const double d = distance(metric, X.row(i), X.row(j));
            dm.at(i, j) = d;
            dm.at(j, i) = d;
        }
    }
    return dm;
}

// On-disk form consumed by `train --precomputed`: "OPFD", a 64-bit LE count n,
// then n*n float64 entries in row-major order.

inline void save_distance_matrix(const DistanceMatrix& dm,
                                 const std::filesystem::path& path) {
    std::string out = "OPFD";
    detail::put_u64(out, static_cast<std::uint64_t>(dm.size()));
    for (std::size_t i = 0; i < dm.size(); ++i)
        for (std::size_t j = 0; j < dm.size(); ++j) detail::put_f64(out, dm.at(i, j));
    detail::write_file(path, out);
}

inline DistanceMatrix load_distance_matrix(const std::filesystem::path& path) {
    const std::string data = detail::read_file(path);
    detail::ByteReader r(data, path.string());
    if (r.bytes(4) != "OPFD")
        throw ParseError(path.string() + ": not a distance matrix file (bad magic)");
    const std::uint64_t n = r.u64();
    if (n < 1) throw ParseError(path.string() + ": empty distance matrix");
    DistanceMatrix dm(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) dm.at(i, j) = r.f64();
    if (!r.exhausted())
        throw ParseError(path.string() + ": trailing bytes after the matrix payload");
    return dm;
}

} // namespace opf
