// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revhawk Contributors

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "revhawk/learners/tree.hpp"

namespace revhawk::learners {

/// Averaged ensemble of classification trees.
class ForestModel final : public Classifier {
public:
    ForestModel() = default;
    ForestModel(std::string kind, std::vector<DecisionTree> trees, bool bootstrap, std::uint64_t seed)
        : kind_(std::move(kind)), trees_(std::move(trees)), bootstrap_(bootstrap), seed_(seed) {}

    std::string kind() const override { return kind_; }
    double predict_proba(std::span<const double> row) const override;
    using Classifier::predict_proba;
    json to_json() const override;
    static ForestModel from_json(const json& doc);

    const std::vector<DecisionTree>& trees() const noexcept { return trees_; }
    std::size_t n_estimators() const noexcept { return trees_.size(); }
    bool bootstrap() const noexcept { return bootstrap_; }

private:
    std::string kind_;
    std::vector<DecisionTree> trees_;
    bool bootstrap_ = false;
    std::uint64_t seed_ = 0;
};

struct ForestParams {
    std::size_t n_estimators = 50;
    TreeParams tree;
    std::uint64_t seed = 0;
};

/// Every tree sees all rows and uses random-threshold splits.
ForestModel train_extra_trees(const DenseMatrix& X, const Labels& y, std::span<const std::size_t> rows,
                              ForestParams params);

/// Every tree sees a bootstrap sample and uses best-Gini splits.
ForestModel train_random_forest(const DenseMatrix& X, const Labels& y, std::span<const std::size_t> rows,
                                ForestParams params);

}  // namespace revhawk::learners
