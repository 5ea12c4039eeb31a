// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revhawk Contributors

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "revhawk/matrix.hpp"

namespace revhawk {

/// Sparse copy of a dense matrix (exact zeros dropped).
FeatureMatrix to_sparse(const DenseMatrix& dense);

/// Exact Euclidean k-nearest-neighbour search over the rows of a sparse
/// matrix, optionally restricted to a subset of columns. Distances use
/// |a|^2 + |b|^2 - 2 a.b with an inverted column index, so query cost scales
/// with the number of shared non-zeros. Equal distances are ordered by
/// ascending row index.
class NeighborIndex {
public:
    /// `column_mask` (one byte per column, non-zero = used) may be empty,
    /// meaning all columns.
    explicit NeighborIndex(const FeatureMatrix& points, std::span<const std::uint8_t> column_mask = {});

    std::size_t size() const noexcept { return norms_.size(); }

    /// Indices of the k nearest indexed rows to `query`, nearest first.
    /// `exclude` removes one indexed row (the query itself) from the candidates.
    std::vector<std::size_t> query(const FeatureMatrix::RowView& query, std::size_t k,
                                   std::optional<std::size_t> exclude = std::nullopt) const;

    /// Squared distances from `query` to every indexed row.
    std::vector<double> squared_distances(const FeatureMatrix::RowView& query) const;

private:
    bool used(ColumnIndex c) const noexcept { return mask_.empty() || mask_[c] != 0; }

    std::vector<std::uint8_t> mask_;
    std::vector<double> norms_;
    // Column-major copy of the used columns.
    std::vector<std::size_t> col_ptr_;
    std::vector<std::uint32_t> col_rows_;
    std::vector<double> col_values_;
};

}  // namespace revhawk
