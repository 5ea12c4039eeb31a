// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revhawk Contributors

#pragma once

#include <cstdint>
#include <vector>

#include "revhawk/learners/tree.hpp"

namespace revhawk::learners {

struct BoostingParams {
    std::size_t n_estimators = 50;
    double learning_rate = 0.1;
    std::size_t max_depth = 6;
    std::size_t min_samples_split = 2;
    /// Histogram resolution used for split search.
    std::size_t max_bins = 64;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Gradient-boosted regression trees on the logit with logistic loss.
class BoostedModel final : public Classifier {
public:
    BoostedModel() = default;
    BoostedModel(double initial_logit, double learning_rate, std::vector<DecisionTree> stages)
        : initial_logit_(initial_logit), learning_rate_(learning_rate), stages_(std::move(stages)) {}

    std::string kind() const override { return "gradient_boosting"; }
    double predict_proba(std::span<const double> row) const override;
    using Classifier::predict_proba;
    json to_json() const override;
    static BoostedModel from_json(const json& doc);

    /// Raw score F(x) = initial_logit + lr * sum of stage outputs.
    double decision(std::span<const double> row) const;

    double initial_logit() const noexcept { return initial_logit_; }
    double learning_rate() const noexcept { return learning_rate_; }
    const std::vector<DecisionTree>& stages() const noexcept { return stages_; }

private:
    double initial_logit_ = 0.0;
    double learning_rate_ = 0.1;
    std::vector<DecisionTree> stages_;
};

/// Mean logistic loss of probabilities p against labels.
double log_loss(const Labels& y, std::span<const double> p);

/// F0 = log(p / (1 - p)) for the CG rate p. Each stage fits a least-squares
/// regression tree to the residuals y - sigmoid(F); a leaf outputs the mean
/// residual of its rows and F grows by learning_rate times that output.
/// Split search works on per-feature quantile histograms built from the
/// training rows. Rejects single-class input with DataError.
/// `loss_trace`, when given, receives the training log-loss before the first
/// stage and after each stage.
BoostedModel train_gradient_boosting(const DenseMatrix& X, const Labels& y, std::span<const std::size_t> rows,
                                     const BoostingParams& params, std::vector<double>* loss_trace = nullptr);

}  // namespace revhawk::learners
