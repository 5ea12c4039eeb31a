// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revhawk Contributors

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "revhawk/common.hpp"
#include "revhawk/matrix.hpp"

namespace revhawk::resample {

struct ResampleParams {
    std::size_t smote_k = 5;
    std::size_t enn_k = 3;
    double target_ratio = 1.0;  // minority / majority after oversampling
    std::uint64_t seed = 0;

    void validate() const;
};

enum class Provenance : std::uint8_t { original, synthetic };

struct ResampleReport {
    ClassCounts input;
    std::size_t synthetic = 0;
    Label synthetic_class = Label::OR;
    ClassCounts removed;
    ClassCounts output;

    std::string to_json() const;
};

struct ResampledSet {
    DenseMatrix X;
    Labels y;
    std::vector<Provenance> provenance;
    /// Row in the input matrix for original rows, or SIZE_MAX for synthetic ones.
    std::vector<std::size_t> source_row;
    std::size_t removed_count = 0;
    ResampleReport report;
};

/// n_synthetic rows x + u (x_nn - x): x a uniformly drawn minority row,
/// x_nn one of its k nearest minority neighbours, u ~ U[0, 1].
/// Throws DataError with fewer than 2 minority rows and std::invalid_argument
/// when k exceeds |minority| - 1.
DenseMatrix smote(const DenseMatrix& minority, std::size_t n_synthetic, std::size_t k, Rng& rng);

/// Edited nearest neighbours, one pass: a row is dropped when the majority
/// label of its k nearest other rows differs from its own. Ties between equal
/// distances go to the lower row index. Returns kept row indices, ascending.
std::vector<std::size_t> enn(const DenseMatrix& X, const Labels& y, std::size_t k);

/// SMOTE up to target_ratio * majority, then ENN over the union.
ResampledSet smoteenn(const DenseMatrix& X, const Labels& y, const ResampleParams& params);

}  // namespace revhawk::resample
