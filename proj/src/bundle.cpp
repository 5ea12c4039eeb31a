// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revhawk Contributors

#include "revhawk/bundle.hpp"

#include <fstream>

namespace revhawk::bundle {

namespace fs = std::filesystem;

void write_json(const json& doc, const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << doc.dump(2) << '\n';
}

namespace {

json read_json(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("bundle file " + path.string() + " is missing");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw DataError("bundle file " + path.string() + " is not valid JSON: " + e.what());
    }
}

}  // namespace

void save_bundle(const ModelBundle& b, const fs::path& dir) {
    fs::create_directories(dir);
    write_json({{"format_version", kFormatVersion}, {"config", b.config.to_json()}, {"training_report", b.training_report}},
               dir / "bundle.json");
    b.fitted.space.save(dir / "feature_space");
    hho::save_mask(b.fitted.mask, dir / "mask.txt");
    write_json(b.fitted.model.to_json(), dir / "model.json");
}

ModelBundle load_bundle(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw DataError("bundle directory " + dir.string() + " not found");
    const json meta = read_json(dir / "bundle.json");
    const int version = meta.value("format_version", -1);
    if (version != kFormatVersion)
        throw DataError("bundle format version " + std::to_string(version) + " is not supported (expected " +
                        std::to_string(kFormatVersion) + ")");
    ModelBundle b;
    try {
        b.config = pipeline::PipelineConfig::from_json(meta.at("config"));
    } catch (const ConfigError& e) {
        throw DataError(std::string("bundle config is invalid: ") + e.what());
    }
    b.training_report = meta.value("training_report", json::object());
    b.fitted.space = features::FeatureSpace::load(dir / "feature_space");
    b.fitted.mask = hho::load_mask(dir / "mask.txt");
    if (b.fitted.mask.size() != b.fitted.space.total_dim)
        throw DataError("mask dimension " + std::to_string(b.fitted.mask.size()) + " does not match feature space " +
                        std::to_string(b.fitted.space.total_dim));
    b.fitted.model = learners::StackingModel::from_json(read_json(dir / "model.json"));
    for (const auto& base : b.fitted.model.bases()) {
        const auto* lin = dynamic_cast<const learners::LinearModel*>(base.get());
        if (lin && lin->weights().size() != b.fitted.mask.selected_count())
            throw DataError("model input width " + std::to_string(lin->weights().size()) +
                            " does not match the mask's " + std::to_string(b.fitted.mask.selected_count()) +
                            " selected columns");
    }
    return b;
}

std::string provenance_comment(const pipeline::PipelineConfig& config) { return "config: " + config.to_json().dump(); }

void write_training_artifacts(const pipeline::TrainOutcome& outcome, const pipeline::PipelineConfig& config,
                              const fs::path& out_dir) {
    fs::create_directories(out_dir);
    const json report = outcome.report(config);
    const std::string comment = provenance_comment(config);

    ModelBundle b;
    b.config = config;
    b.training_report = report;
    // The bundle shares the fitted state; copy through JSON to avoid a second training.
    b.fitted.space = outcome.fitted.space;
    b.fitted.mask = outcome.fitted.mask;
    b.fitted.model = learners::StackingModel::from_json(outcome.fitted.model.to_json());
    save_bundle(b, out_dir / "bundle");

    write_json(report, out_dir / "metrics.json");
    hho::write_convergence(outcome.convergence, out_dir / "convergence.csv", comment);
    write_json({{"config", config.to_json()}, {"seed", config.seed}, {"resample", report.at("resample")}},
               out_dir / "resample_report.json");
    eval::write_roc_csv(out_dir / "roc.csv", outcome.roc, comment);

    std::ofstream pred(out_dir / "test_predictions.csv", std::ios::binary);
    if (!pred) throw Error("cannot write test_predictions.csv");
    pred << "# " << comment << '\n';
    pred.precision(17);
    pred << "row,label,probability_cg,predicted\n";
    for (std::size_t i = 0; i < outcome.test_rows.size(); ++i) {
        const double p = outcome.test_scores[i];
        pred << outcome.test_rows[i] << ',' << label_name(outcome.test_labels[i]) << ',' << p << ','
             << label_name(learners::label_from_proba(p)) << '\n';
    }
}

}  // namespace revhawk::bundle
