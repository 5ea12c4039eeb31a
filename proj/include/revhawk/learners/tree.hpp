// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revhawk Contributors

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "revhawk/learners/classifier.hpp"

namespace revhawk::learners {

enum class SplitRule { best_gini, random_threshold };

struct TreeParams {
    std::size_t max_depth = 32;
    std::size_t min_samples_split = 2;
    /// Features examined per node; 0 means round(sqrt(D)).
    std::size_t n_candidate_features = 0;
    SplitRule split_rule = SplitRule::best_gini;

    void validate() const;
    std::size_t candidates_for(std::size_t n_features) const;
};

/// Internal nodes route x[feature] <= threshold to the left child. Leaves
/// carry `value`: P(CG) for classification trees, the output for regression trees.
struct TreeNode {
    std::int32_t feature = -1;
    double threshold = 0.0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    double value = 0.0;

    bool is_leaf() const noexcept { return feature < 0; }
    friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

class DecisionTree {
public:
    DecisionTree() = default;
    explicit DecisionTree(std::vector<TreeNode> nodes) : nodes_(std::move(nodes)) {}

    double predict(std::span<const double> row) const noexcept;
    const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }
    std::size_t depth() const;

    json to_json() const;
    static DecisionTree from_json(const json& doc);

    friend bool operator==(const DecisionTree&, const DecisionTree&) = default;

private:
    std::vector<TreeNode> nodes_;
};

/// Gini classification tree on X[rows]. Leaves hold the Laplace-smoothed
/// estimate (n_cg + 1) / (n + 2). Candidate features are drawn without
/// replacement; features constant within the node do not count towards the
/// candidate budget. Throws std::invalid_argument on empty input.
DecisionTree train_tree(const DenseMatrix& X, const Labels& y, std::span<const std::size_t> rows,
                        const TreeParams& params, Rng& rng);

}  // namespace revhawk::learners
