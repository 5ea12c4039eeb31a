// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revhawk Contributors

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace revhawk {

using ColumnIndex = std::uint32_t;

/// Dense row-major matrix of doubles.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }

    void append_row(std::span<const double> values);
    DenseMatrix select_rows(std::span<const std::size_t> rows) const;

    const std::vector<double>& data() const noexcept { return data_; }

    friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Compressed sparse row matrix. Rows hold strictly increasing column
/// indices and no stored zeros.
class FeatureMatrix {
public:
    struct RowView {
        std::span<const ColumnIndex> cols;
        std::span<const double> values;
        std::size_t size() const noexcept { return cols.size(); }
    };

    FeatureMatrix() = default;
    explicit FeatureMatrix(std::size_t n_cols) : n_cols_(n_cols) {}

    std::size_t rows() const noexcept { return row_ptr_.size() - 1; }
    std::size_t cols() const noexcept { return n_cols_; }
    std::size_t nnz() const noexcept { return values_.size(); }

    /// Entries may come in any order; zeros are dropped. Throws
    /// std::invalid_argument on duplicate or out-of-range columns.
    void append_row(std::vector<std::pair<ColumnIndex, double>> entries);

    RowView row(std::size_t r) const noexcept {
        const std::size_t b = row_ptr_[r], e = row_ptr_[r + 1];
        return {{cols_.data() + b, e - b}, {values_.data() + b, e - b}};
    }

    double at(std::size_t r, ColumnIndex c) const noexcept;

    FeatureMatrix select_rows(std::span<const std::size_t> rows) const;

    /// Dense copy restricted to `columns`, in the given order.
    DenseMatrix densify(std::span<const ColumnIndex> columns) const;

    friend bool operator==(const FeatureMatrix&, const FeatureMatrix&) = default;

private:
    std::size_t n_cols_ = 0;
    std::vector<std::size_t> row_ptr_{0};
    std::vector<ColumnIndex> cols_;
    std::vector<double> values_;
};

}  // namespace revhawk
