// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revhawk Contributors

#include "revhawk/learners/stacking.hpp"

#include "revhawk/corpus.hpp"

namespace revhawk::learners {

EnsembleConfig EnsembleConfig::desk() {
    EnsembleConfig c;
    c.extra_trees.n_estimators = 50;
    c.random_forest.n_estimators = 40;
    c.boosting.n_estimators = 50;
    c.meta.regularization = 1e-6;
    return c;
}

EnsembleConfig EnsembleConfig::paper() {
    EnsembleConfig c = desk();
    c.extra_trees.n_estimators = 500;
    c.random_forest.n_estimators = 400;
    c.boosting.n_estimators = 500;
    return c;
}

void EnsembleConfig::validate() const {
    if (extra_trees.n_estimators < 1 || random_forest.n_estimators < 1)
        throw std::invalid_argument("forests need at least one tree");
    extra_trees.tree.validate();
    random_forest.tree.validate();
    boosting.validate();
    svm.validate();
    meta.validate();
    if (folds < 2) throw std::invalid_argument("stacking needs at least two folds");
}

json EnsembleConfig::to_json() const {
    auto tree = [](const TreeParams& t) {
        return json{{"max_depth", t.max_depth},
                    {"min_samples_split", t.min_samples_split},
                    {"n_candidate_features", t.n_candidate_features}};
    };
    return {{"extra_trees", {{"n_estimators", extra_trees.n_estimators}, {"tree", tree(extra_trees.tree)}}},
            {"random_forest", {{"n_estimators", random_forest.n_estimators}, {"tree", tree(random_forest.tree)}}},
            {"gradient_boosting",
             {{"n_estimators", boosting.n_estimators},
              {"learning_rate", boosting.learning_rate},
              {"max_depth", boosting.max_depth},
              {"max_bins", boosting.max_bins}}},
            {"linear_svm",
             {{"regularization", svm.regularization},
              {"epochs", svm.epochs},
              {"calibration_fraction", svm.calibration_fraction}}},
            {"meta", {{"regularization", meta.regularization}, {"max_iterations", meta.max_iterations}}},
            {"folds", folds}};
}

std::vector<BaseLearner> base_learners(const EnsembleConfig& config) {
    std::vector<BaseLearner> out;
    out.push_back({"extra_trees", [p = config.extra_trees](const DenseMatrix& X, const Labels& y,
                                                            std::span<const std::size_t> rows, std::uint64_t seed) {
                       ForestParams q = p;
                       q.seed = seed;
                       return std::unique_ptr<Classifier>(std::make_unique<ForestModel>(train_extra_trees(X, y, rows, q)));
                   }});
    out.push_back({"random_forest", [p = config.random_forest](const DenseMatrix& X, const Labels& y,
                                                                std::span<const std::size_t> rows, std::uint64_t seed) {
                       ForestParams q = p;
                       q.seed = seed;
                       return std::unique_ptr<Classifier>(
                           std::make_unique<ForestModel>(train_random_forest(X, y, rows, q)));
                   }});
    out.push_back({"gradient_boosting", [p = config.boosting](const DenseMatrix& X, const Labels& y,
                                                               std::span<const std::size_t> rows, std::uint64_t seed) {
                       BoostingParams q = p;
                       q.seed = seed;
                       return std::unique_ptr<Classifier>(
                           std::make_unique<BoostedModel>(train_gradient_boosting(X, y, rows, q)));
                   }});
    out.push_back({"linear_svm", [p = config.svm](const DenseMatrix& X, const Labels& y,
                                                   std::span<const std::size_t> rows, std::uint64_t seed) {
                       SvmParams q = p;
                       q.seed = seed;
                       return std::unique_ptr<Classifier>(std::make_unique<LinearModel>(train_linear_svm(X, y, rows, q)));
                   }});
    return out;
}

StackingModel::StackingModel(std::vector<std::string> names, std::vector<std::unique_ptr<Classifier>> bases,
                             LinearModel meta, int oof_folds)
    : names_(std::move(names)), bases_(std::move(bases)), meta_(std::move(meta)), oof_folds_(oof_folds) {
    if (names_.size() != bases_.size()) throw std::invalid_argument("one name per base model");
    if (meta_.weights().size() != bases_.size())
        throw DataError("meta-learner input dimension must equal the number of base models");
}

std::vector<double> StackingModel::base_probabilities(std::span<const double> row) const {
    std::vector<double> p(bases_.size());
    for (std::size_t b = 0; b < bases_.size(); ++b) p[b] = bases_[b]->predict_proba(row);
    return p;
}

double StackingModel::predict_proba(std::span<const double> row) const {
    return meta_.predict_proba(base_probabilities(row));
}

json StackingModel::to_json() const {
    json bases = json::array();
    for (std::size_t b = 0; b < bases_.size(); ++b) bases.push_back({{"name", names_[b]}, {"model", bases_[b]->to_json()}});
    return {{"kind", kind()}, {"oof_folds", oof_folds_}, {"bases", bases}, {"meta", meta_.to_json()}};
}

StackingModel StackingModel::from_json(const json& doc) {
    std::vector<std::string> names;
    std::vector<std::unique_ptr<Classifier>> bases;
    for (const auto& b : doc.at("bases")) {
        names.push_back(b.at("name").get<std::string>());
        bases.push_back(classifier_from_json(b.at("model")));
    }
    return StackingModel(std::move(names), std::move(bases), LinearModel::from_json(doc.at("meta")),
                         doc.at("oof_folds").get<int>());
}

StackingFit train_stacking(const DenseMatrix& X, const Labels& y, std::span<const std::size_t> rows,
                           const std::vector<BaseLearner>& bases, const LogisticParams& meta, int folds,
                           std::uint64_t seed) {
    if (bases.empty()) throw std::invalid_argument("stacking needs base learners");
    if (rows.empty()) throw std::invalid_argument("cannot train stacking on zero rows");
    Labels local;
    local.reserve(rows.size());
    for (auto r : rows) local.push_back(y.at(r));
    const auto fold_list = corpus::stratified_kfold(local, folds, derive_seed(seed, "stacking-folds"));

    DenseMatrix oof(rows.size(), bases.size());
    for (std::size_t f = 0; f < fold_list.size(); ++f) {
        std::vector<std::size_t> train;
        train.reserve(fold_list[f].train.size());
        for (auto i : fold_list[f].train) train.push_back(rows[i]);
        for (std::size_t b = 0; b < bases.size(); ++b) {
            const auto model = bases[b].train(X, y, train, derive_seed(seed, "base", {b, f}));
            for (auto i : fold_list[f].validation) oof(i, b) = model->predict_proba(X.row(rows[i]));
        }
    }

    LinearModel meta_model = train_logistic_regression(oof, local, all_rows(rows.size()), meta);

    std::vector<std::string> names;
    std::vector<std::unique_ptr<Classifier>> fitted;
    for (std::size_t b = 0; b < bases.size(); ++b) {
        names.push_back(bases[b].name);
        fitted.push_back(bases[b].train(X, y, rows, derive_seed(seed, "base", {b, fold_list.size()})));
    }
    return {StackingModel(std::move(names), std::move(fitted), std::move(meta_model), folds), std::move(oof)};
}

StackingFit train_stacking(const DenseMatrix& X, const Labels& y, std::span<const std::size_t> rows,
                           const EnsembleConfig& config, std::uint64_t seed) {
    config.validate();
    return train_stacking(X, y, rows, base_learners(config), config.meta, config.folds, seed);
}

}  // namespace revhawk::learners
