// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revhawk Contributors

#include "revhawk/matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace revhawk {

void DenseMatrix::append_row(std::span<const double> values) {
    if (rows_ == 0 && cols_ == 0) cols_ = values.size();
    if (values.size() != cols_) throw std::invalid_argument("row width does not match matrix columns");
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
}

DenseMatrix DenseMatrix::select_rows(std::span<const std::size_t> rows) const {
    DenseMatrix out(rows.size(), cols_);
    for (std::size_t i = 0; i < rows.size(); ++i) std::copy_n(row(rows[i]).begin(), cols_, out.row(i).begin());
    return out;
}

void FeatureMatrix::append_row(std::vector<std::pair<ColumnIndex, double>> entries) {
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (entries[i].first >= n_cols_) throw std::invalid_argument("column index out of range");
        if (i && entries[i].first == entries[i - 1].first) throw std::invalid_argument("duplicate column in row");
    }
    for (const auto& [c, v] : entries) {
        if (v == 0.0) continue;
        cols_.push_back(c);
        values_.push_back(v);
    }
    row_ptr_.push_back(values_.size());
}

double FeatureMatrix::at(std::size_t r, ColumnIndex c) const noexcept {
    auto view = row(r);
    auto it = std::lower_bound(view.cols.begin(), view.cols.end(), c);
    if (it == view.cols.end() || *it != c) return 0.0;
    return view.values[static_cast<std::size_t>(it - view.cols.begin())];
}

FeatureMatrix FeatureMatrix::select_rows(std::span<const std::size_t> rows) const {
    FeatureMatrix out(n_cols_);
    for (std::size_t r : rows) {
        auto view = row(r);
        out.cols_.insert(out.cols_.end(), view.cols.begin(), view.cols.end());
        out.values_.insert(out.values_.end(), view.values.begin(), view.values.end());
        out.row_ptr_.push_back(out.values_.size());
    }
    return out;
}

DenseMatrix FeatureMatrix::densify(std::span<const ColumnIndex> columns) const {
    // Map original column -> dense position.
    std::vector<std::int64_t> position(n_cols_, -1);
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j] >= n_cols_) throw std::invalid_argument("column index out of range");
        position[columns[j]] = static_cast<std::int64_t>(j);
    }
    DenseMatrix out(rows(), columns.size());
    for (std::size_t r = 0; r < rows(); ++r) {
        auto view = row(r);
        for (std::size_t k = 0; k < view.size(); ++k) {
            auto p = position[view.cols[k]];
            if (p >= 0) out(r, static_cast<std::size_t>(p)) = view.values[k];
        }
    }
    return out;
}

}  // namespace revhawk
