// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revhawk Contributors

#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "revhawk/learners/boosting.hpp"
#include "revhawk/learners/forest.hpp"
#include "revhawk/learners/linear.hpp"

namespace revhawk::learners {

/// Trains one base model on X[rows]; the seed is already derived per base and fold.
using LearnerFactory = std::function<std::unique_ptr<Classifier>(const DenseMatrix&, const Labels&,
                                                                 std::span<const std::size_t>, std::uint64_t)>;

struct BaseLearner {
    std::string name;
    LearnerFactory train;
};

struct EnsembleConfig {
    ForestParams extra_trees;
    ForestParams random_forest;
    BoostingParams boosting;
    SvmParams svm;
    LogisticParams meta;
    int folds = 5;

    /// 50 / 40 / 50 estimators.
    static EnsembleConfig desk();
    /// 500 / 400 / 500 estimators.
    static EnsembleConfig paper();

    void validate() const;
    json to_json() const;
};

/// The four base learners in meta-feature column order: extra trees, random
/// forest, gradient boosting, calibrated linear SVM.
std::vector<BaseLearner> base_learners(const EnsembleConfig& config);

class StackingModel final : public Classifier {
public:
    StackingModel() = default;
    StackingModel(std::vector<std::string> names, std::vector<std::unique_ptr<Classifier>> bases, LinearModel meta,
                  int oof_folds);

    std::string kind() const override { return "stacking"; }
    double predict_proba(std::span<const double> row) const override;
    using Classifier::predict_proba;
    json to_json() const override;
    static StackingModel from_json(const json& doc);

    /// One probability per base model, in meta-feature order.
    std::vector<double> base_probabilities(std::span<const double> row) const;

    const std::vector<std::string>& base_names() const noexcept { return names_; }
    const std::vector<std::unique_ptr<Classifier>>& bases() const noexcept { return bases_; }
    const LinearModel& meta() const noexcept { return meta_; }
    int oof_folds() const noexcept { return oof_folds_; }

private:
    std::vector<std::string> names_;
    std::vector<std::unique_ptr<Classifier>> bases_;
    LinearModel meta_;
    int oof_folds_ = 5;
};

struct StackingFit {
    StackingModel model;
    /// Out-of-fold base probabilities, one row per training row (in `rows` order).
    DenseMatrix oof;
};

/// Stratified k-fold out-of-fold protocol: each base model trained on k-1
/// folds predicts the held-out fold; the assembled matrix trains the
/// logistic meta-learner; every base model is then refit on all rows.
StackingFit train_stacking(const DenseMatrix& X, const Labels& y, std::span<const std::size_t> rows,
                           const std::vector<BaseLearner>& bases, const LogisticParams& meta, int folds,
                           std::uint64_t seed);

StackingFit train_stacking(const DenseMatrix& X, const Labels& y, std::span<const std::size_t> rows,
                           const EnsembleConfig& config, std::uint64_t seed);

}  // namespace revhawk::learners
