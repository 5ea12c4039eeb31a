// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revhawk Contributors

#pragma once

#include <filesystem>

#include "revhawk/pipeline.hpp"

namespace revhawk::bundle {

using json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

/// Directory layout:
///   bundle.json      format_version, config snapshot, training report
///   feature_space/   fitted vocabularies and scaler
///   mask.txt         selected columns
///   model.json       stacking model (base models + meta-learner)
struct ModelBundle {
    pipeline::PipelineConfig config;
    pipeline::FittedModel fitted;
    json training_report;
};

void save_bundle(const ModelBundle& bundle, const std::filesystem::path& dir);

/// Throws DataError on a version mismatch, a mask that does not match the
/// feature space, or a model whose input width differs from the mask.
ModelBundle load_bundle(const std::filesystem::path& dir);

void write_json(const json& doc, const std::filesystem::path& path);

/// "config: {...}" text for the comment line that opens every delimited artifact.
std::string provenance_comment(const pipeline::PipelineConfig& config);

/// Writes the bundle plus metrics.json, convergence.csv,
/// resample_report.json, roc.csv and test_predictions.csv into out_dir.
void write_training_artifacts(const pipeline::TrainOutcome& outcome, const pipeline::PipelineConfig& config,
                              const std::filesystem::path& out_dir);

}  // namespace revhawk::bundle
