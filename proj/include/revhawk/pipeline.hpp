// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revhawk Contributors

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "revhawk/corpus.hpp"
#include "revhawk/eval.hpp"
#include "revhawk/features.hpp"
#include "revhawk/hho.hpp"
#include "revhawk/learners/stacking.hpp"
#include "revhawk/resample.hpp"

namespace revhawk::pipeline {

using json = nlohmann::json;

enum class Profile { desk, paper };
enum class StageOrder { standard, paper_compat };

std::string_view profile_name(Profile p) noexcept;
std::string_view stage_order_name(StageOrder s) noexcept;
Profile parse_profile(std::string_view s);
StageOrder parse_stage_order(std::string_view s);

/// Flat run configuration. Every field maps to one key of the config file.
struct PipelineConfig {
    std::string dataset;
    std::string resources;
    std::string output_dir = "revhawk-out";
    std::string text_column = "text_";
    std::string label_column = "label";
    /// Stratified sample of this many rows before anything else; 0 keeps all.
    std::size_t sample_rows = 0;

    bool expand_contractions = true;
    bool lowercase = true;
    bool preserve_emotive_punct = true;
    bool lemmatize = true;
    bool remove_stopwords = true;

    std::size_t word_max = 10000;
    std::size_t char_max = 1500;
    std::size_t count_max = 2000;
    int word_ngram_min = 1, word_ngram_max = 4;
    int char_ngram_min = 3, char_ngram_max = 6;
    int count_ngram_min = 1, count_ngram_max = 2;

    std::size_t hho_hawks = 30;
    std::size_t hho_iterations = 50;
    double hho_levy_beta = 1.5;
    double fitness_alpha = 0.99;
    std::size_t knn_k = 5;
    double knn_holdout = 0.2;
    std::size_t knn_max_rows = 2000;

    std::size_t smote_k = 5;
    std::size_t enn_k = 3;
    double target_ratio = 1.0;

    Profile profile = Profile::desk;
    std::size_t et_estimators = 50;
    std::size_t rf_estimators = 40;
    std::size_t gb_estimators = 50;
    double gb_learning_rate = 0.1;
    std::size_t gb_max_depth = 6;
    std::size_t svm_epochs = 20;
    double svm_lambda = 1e-4;
    int stack_folds = 5;

    double test_fraction = 0.15;
    std::uint64_t seed = 42;
    StageOrder stage_order = StageOrder::standard;
    /// Stratified CV folds run after the main fit; 0 disables.
    int cv_folds = 0;

    /// Defaults for a profile: desk uses 50/40/50 estimators and a small
    /// swarm; paper uses 500/400/500 and 30 hawks x 50 iterations.
    static PipelineConfig for_profile(Profile p);

    /// Starts from for_profile(profile key or `fallback`) and applies every
    /// key. Unknown keys and mistyped values raise ConfigError.
    static PipelineConfig from_json(const json& doc, Profile fallback = Profile::desk);
    static PipelineConfig load(const std::filesystem::path& path, Profile fallback = Profile::desk);
    json to_json() const;

    void validate() const;

    preprocess::PreprocessConfig preprocess_config() const;
    features::FeatureCaps caps() const;
    hho::HHOParams hho_params() const;
    hho::FitnessParams fitness_params() const;
    hho::KnnEvaluatorParams knn_params() const;
    resample::ResampleParams resample_params() const;
    learners::EnsembleConfig ensemble() const;
    corpus::ColumnSchema schema() const;
};

/// Named seed for one stage, derived from the root seed.
std::uint64_t stage_seed(std::uint64_t root, std::string_view stage);

/// Loaded preprocessing and linguistic lexicons.
struct TextResources {
    preprocess::Resources preprocess;
    features::LinguisticLexicons lexicons;

    static TextResources load(const std::filesystem::path& dir);
};

/// Everything needed to score raw text.
struct FittedModel {
    features::FeatureSpace space;
    hho::FeatureMask mask;
    learners::StackingModel model;

    /// Raw texts -> CG probabilities.
    std::vector<double> predict(const std::vector<std::string>& texts, const PipelineConfig& config,
                                const TextResources& res) const;
};

/// Digests of fitted state, compared by the leakage guard.
struct StateFingerprints {
    std::string features;
    std::string mask;
    std::string resampled;
    std::string models;

    json to_json() const;
    friend bool operator==(const StateFingerprints&, const StateFingerprints&) = default;
};

struct StageLog {
    std::string stage;
    std::size_t rows = 0;
    std::size_t cols = 0;
};

struct TrainOutcome {
    FittedModel fitted;
    eval::ConfusionMatrix confusion;
    eval::MetricReport test_metrics;
    std::map<std::string, eval::MetricReport> base_metrics;
    std::vector<eval::RocPoint> roc;
    std::vector<double> convergence;
    resample::ResampleReport resample_report;
    StateFingerprints fingerprints;
    std::vector<StageLog> stages;
    /// Rows of the evaluated corpus held out for testing, with their scores.
    std::vector<std::size_t> test_rows;
    std::vector<double> test_scores;
    Labels test_labels;
    std::size_t total_dim = 0;
    std::size_t selected_dim = 0;
    std::optional<eval::CvSummary> cv;

    json report(const PipelineConfig& config) const;
};

using Logger = std::function<void(const std::string&)>;

/// Runs the configured stage order on an already-loaded corpus. Stage
/// failures surface as StageError tagged with the stage name.
TrainOutcome train(const corpus::Corpus& corpus, const PipelineConfig& config, const TextResources& res,
                   const Logger& log = {});

/// Fits everything on `train_rows` of the corpus and scores `eval_rows`.
/// Shared by the main run and every CV fold.
TrainOutcome fit_and_score(const corpus::Corpus& corpus, std::span<const std::size_t> train_rows,
                           std::span<const std::size_t> eval_rows, const PipelineConfig& config,
                           const TextResources& res, std::uint64_t seed, const Logger& log = {});

/// Stratified sample of `n` rows (or the whole corpus when n is 0 or >= size).
corpus::Corpus sample_corpus(const corpus::Corpus& corpus, std::size_t n, std::uint64_t seed);

}  // namespace revhawk::pipeline
