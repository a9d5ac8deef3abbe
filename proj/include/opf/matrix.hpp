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

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "opf/errors.hpp"

namespace opf {

/// Dense row-major matrix of doubles. Feature values are always held and
/// combined in 64-bit precision, regardless of how the source file stored them.
class Matrix {
public:
    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix from_rows(const std::vector<std::vector<double>>& rows) {
        Matrix m;
        if (rows.empty()) return m;
        m.rows_ = rows.size();
        m.cols_ = rows.front().size();
        m.data_.reserve(m.rows_ * m.cols_);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_)
                throw DimensionError("ragged matrix: row " + std::to_string(i) + " has " +
                                     std::to_string(rows[i].size()) + " values, expected " +
                                     std::to_string(m.cols_));
            m.data_.insert(m.data_.end(), rows[i].begin(), rows[i].end());
        }
        return m;
    }

    static Matrix from_rows(std::initializer_list<std::vector<double>> rows) {
        return from_rows(std::vector<std::vector<double>>(rows));
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0; }

    std::span<const double> row(std::size_t i) const {
        return {data_.data() + i * cols_, cols_};
    }
    std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }

    double at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    double& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

    void append_row(std::span<const double> values) {
        if (rows_ == 0 && cols_ == 0) cols_ = values.size();
        if (values.size() != cols_)
            throw DimensionError("appended row has " + std::to_string(values.size()) +
                                 " values, expected " + std::to_string(cols_));
        data_.insert(data_.end(), values.begin(), values.end());
        ++rows_;
    }

    /// Swaps the contents of row i with the given external row (same width).
    void swap_row(std::size_t i, std::span<double> other) {
        auto r = row(i);
        for (std::size_t j = 0; j < cols_; ++j) std::swap(r[j], other[j]);
    }

    void remove_row(std::size_t i) {
        data_.erase(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                    data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
        --rows_;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

} // namespace opf
