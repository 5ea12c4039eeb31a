// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revhawk Contributors

#pragma once

#include <cstdint>
#include <vector>

#include "revhawk/learners/classifier.hpp"

namespace revhawk::learners {

/// Sigmoid over a*d + b. The identity calibrator (a=1, b=0) maps the raw
/// decision value d straight through the logistic function.
struct PlattCalibrator {
    double a = 1.0;
    double b = 0.0;
    bool identity = true;

    double operator()(double decision) const noexcept;
};

/// Fits (a, b) by Newton's method on smoothed targets. a is clamped to a
/// small positive floor so probabilities stay increasing in the decision.
PlattCalibrator fit_platt(std::span<const double> decisions, const Labels& y);

class LinearModel final : public Classifier {
public:
    LinearModel() = default;
    LinearModel(std::string kind, std::vector<double> weights, double bias, PlattCalibrator calibrator)
        : kind_(std::move(kind)), weights_(std::move(weights)), bias_(bias), calibrator_(calibrator) {}

    std::string kind() const override { return kind_; }
    double predict_proba(std::span<const double> row) const override;
    using Classifier::predict_proba;
    json to_json() const override;
    static LinearModel from_json(const json& doc);

    double decision(std::span<const double> row) const;

    const std::vector<double>& weights() const noexcept { return weights_; }
    double bias() const noexcept { return bias_; }
    const PlattCalibrator& calibrator() const noexcept { return calibrator_; }

private:
    std::string kind_ = "logistic_regression";
    std::vector<double> weights_;
    double bias_ = 0.0;
    PlattCalibrator calibrator_;
};

struct SvmParams {
    double regularization = 1e-4;
    std::size_t epochs = 20;
    /// Share of training rows held out to fit the Platt calibrator.
    double calibration_fraction = 0.2;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Pegasos subgradient descent on the L2-regularized hinge loss with a
/// constant-1 bias feature and step 1/(lambda t). Rows are reshuffled every
/// epoch; the returned weights average the iterates of the final epoch.
/// Trains on all but a stratified calibration share, then fits Platt scaling
/// on that share. Throws DataError on single-class input.
LinearModel train_linear_svm(const DenseMatrix& X, const Labels& y, std::span<const std::size_t> rows,
                             const SvmParams& params);

/// Same optimizer without calibration (identity calibrator), on all rows.
LinearModel train_linear_svm_uncalibrated(const DenseMatrix& X, const Labels& y, std::span<const std::size_t> rows,
                                          const SvmParams& params);

/// Mean hinge loss max(0, 1 - s*d(x)) with s = +1 for CG, -1 for OR.
double hinge_loss(const LinearModel& model, const DenseMatrix& X, const Labels& y,
                  std::span<const std::size_t> rows);

struct LogisticParams {
    double regularization = 1e-4;
    std::size_t max_iterations = 2000;
    double tolerance = 1e-8;

    void validate() const;
};

/// theta = [w_0 .. w_{D-1}, bias]. Mean log-loss plus lambda/2 |w|^2; the
/// bias is not penalized.
double logistic_loss(const DenseMatrix& X, const Labels& y, std::span<const std::size_t> rows, double lambda,
                     std::span<const double> theta);
std::vector<double> logistic_gradient(const DenseMatrix& X, const Labels& y, std::span<const std::size_t> rows,
                                      double lambda, std::span<const double> theta);

/// Full-batch gradient descent with Barzilai-Borwein step proposals and
/// Armijo backtracking. Stops when the gradient norm drops below tolerance.
LinearModel train_logistic_regression(const DenseMatrix& X, const Labels& y, std::span<const std::size_t> rows,
                                      const LogisticParams& params);

}  // namespace revhawk::learners
