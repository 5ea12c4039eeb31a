// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revhawk Contributors

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "revhawk/common.hpp"
#include "revhawk/corpus.hpp"

namespace revhawk::eval {

using json = nlohmann::json;

/// Positive class is CG.
struct ConfusionMatrix {
    std::size_t tp = 0;
    std::size_t tn = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;

    std::size_t total() const noexcept { return tp + tn + fp + fn; }
    json to_json() const;
    friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

ConfusionMatrix confusion(const Labels& truth, const Labels& predicted);

struct MetricReport {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    /// Unset when the evaluated rows hold a single class.
    std::optional<double> auc;
    // Set when the metric's denominator was zero and the value defaulted to 0.
    bool precision_degenerate = false;
    bool recall_degenerate = false;
    bool f1_degenerate = false;

    json to_json() const;
};

/// Throws DataError on an empty matrix.
MetricReport metrics(const ConfusionMatrix& cm);

/// Midrank Mann-Whitney statistic: P(score_CG > score_OR) + P(tie) / 2.
/// Throws DataError unless both classes are present.
double roc_auc(const Labels& truth, std::span<const double> scores);

struct RocPoint {
    double fpr = 0.0;
    double tpr = 0.0;
    /// Score at which this point is reached; +inf for the origin.
    double threshold = 0.0;
};

/// One point per distinct score, descending, from (0,0) to (1,1). Tied
/// scores move diagonally, so the trapezoid area equals roc_auc.
std::vector<RocPoint> roc_curve(const Labels& truth, std::span<const double> scores);
double trapezoid_area(std::span<const RocPoint> curve);
/// fpr,tpr,threshold rows; a non-empty comment becomes a leading "# " line.
void write_roc_csv(const std::filesystem::path& path, std::span<const RocPoint> curve,
                   const std::string& comment = {});

/// Metrics from hard labels at 0.5 plus AUC when both classes are present.
MetricReport evaluate(const Labels& truth, std::span<const double> scores);

struct CvSummary {
    std::vector<MetricReport> folds;
    MetricReport mean;
    /// Population standard deviation per metric.
    MetricReport stddev;

    json to_json() const;
};

CvSummary summarize(std::vector<MetricReport> folds);

/// Evaluates one fold: fits on fold.train, scores fold.validation.
using FoldRunner = std::function<MetricReport(const corpus::Fold& fold, std::size_t index)>;

/// Stratified k folds over `labels`; each fold is handed to `run` in order.
CvSummary cross_validate(const Labels& labels, int k, std::uint64_t seed, const FoldRunner& run);

}  // namespace revhawk::eval
