// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revhawk Contributors

#include "revhawk/neighbors.hpp"

#include <algorithm>
#include <stdexcept>

namespace revhawk {

FeatureMatrix to_sparse(const DenseMatrix& dense) {
    FeatureMatrix out(dense.cols());
    std::vector<std::pair<ColumnIndex, double>> entries;
    for (std::size_t r = 0; r < dense.rows(); ++r) {
        entries.clear();
        auto row = dense.row(r);
        for (std::size_t c = 0; c < row.size(); ++c)
            if (row[c] != 0.0) entries.emplace_back(static_cast<ColumnIndex>(c), row[c]);
        out.append_row(entries);
    }
    return out;
}

NeighborIndex::NeighborIndex(const FeatureMatrix& points, std::span<const std::uint8_t> column_mask)
    : mask_(column_mask.begin(), column_mask.end()) {
    if (!mask_.empty() && mask_.size() != points.cols())
        throw std::invalid_argument("column mask width does not match the matrix");
    const std::size_t n = points.rows();
    norms_.assign(n, 0.0);
    col_ptr_.assign(points.cols() + 1, 0);
    for (std::size_t r = 0; r < n; ++r) {
        auto row = points.row(r);
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (!used(row.cols[k])) continue;
            norms_[r] += row.values[k] * row.values[k];
            ++col_ptr_[row.cols[k] + 1];
        }
    }
    for (std::size_t c = 0; c < points.cols(); ++c) col_ptr_[c + 1] += col_ptr_[c];
    col_rows_.resize(col_ptr_.back());
    col_values_.resize(col_ptr_.back());
    std::vector<std::size_t> fill(col_ptr_.begin(), col_ptr_.end() - 1);
    for (std::size_t r = 0; r < n; ++r) {
        auto row = points.row(r);
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (!used(row.cols[k])) continue;
            const std::size_t at = fill[row.cols[k]]++;
            col_rows_[at] = static_cast<std::uint32_t>(r);
            col_values_[at] = row.values[k];
        }
    }
}

std::vector<double> NeighborIndex::squared_distances(const FeatureMatrix::RowView& query) const {
    const std::size_t n = norms_.size();
    std::vector<double> dot(n, 0.0);
    double qnorm = 0.0;
    for (std::size_t k = 0; k < query.size(); ++k) {
        const ColumnIndex c = query.cols[k];
        if (c + 1 >= col_ptr_.size() || !used(c)) continue;
        const double v = query.values[k];
        qnorm += v * v;
        for (std::size_t p = col_ptr_[c]; p < col_ptr_[c + 1]; ++p) dot[col_rows_[p]] += v * col_values_[p];
    }
    std::vector<double> dist(n);
    for (std::size_t r = 0; r < n; ++r) dist[r] = std::max(0.0, norms_[r] + qnorm - 2.0 * dot[r]);
    return dist;
}

std::vector<std::size_t> NeighborIndex::query(const FeatureMatrix::RowView& q, std::size_t k,
                                              std::optional<std::size_t> exclude) const {
    const auto dist = squared_distances(q);
    std::vector<std::pair<double, std::size_t>> cand;
    cand.reserve(dist.size());
    for (std::size_t r = 0; r < dist.size(); ++r)
        if (!exclude || *exclude != r) cand.emplace_back(dist[r], r);
    k = std::min(k, cand.size());
    auto mid = cand.begin() + static_cast<std::ptrdiff_t>(k);
    std::partial_sort(cand.begin(), mid, cand.end());
    std::vector<std::size_t> out;
    out.reserve(k);
    for (auto it = cand.begin(); it != mid; ++it) out.push_back(it->second);
    return out;
}

}  // namespace revhawk
