// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revhawk Contributors

#include "revhawk/learners/forest.hpp"

namespace revhawk::learners {

double ForestModel::predict_proba(std::span<const double> row) const {
    double sum = 0.0;
    for (const auto& t : trees_) sum += t.predict(row);
    return trees_.empty() ? 0.5 : sum / static_cast<double>(trees_.size());
}

json ForestModel::to_json() const {
    json trees = json::array();
    for (const auto& t : trees_) trees.push_back(t.to_json());
    return {{"kind", kind_}, {"bootstrap", bootstrap_}, {"seed", seed_}, {"trees", trees}};
}

ForestModel ForestModel::from_json(const json& doc) {
    std::vector<DecisionTree> trees;
    for (const auto& t : doc.at("trees")) trees.push_back(DecisionTree::from_json(t));
    return ForestModel(doc.at("kind").get<std::string>(), std::move(trees), doc.at("bootstrap").get<bool>(),
                       doc.at("seed").get<std::uint64_t>());
}

namespace {

ForestModel train_forest(const DenseMatrix& X, const Labels& y, std::span<const std::size_t> rows,
                         const ForestParams& params, bool bootstrap, const char* kind) {
    if (params.n_estimators < 1) throw std::invalid_argument("forest needs at least one tree");
    if (rows.empty()) throw std::invalid_argument("cannot train a forest on zero rows");
    std::vector<DecisionTree> trees(params.n_estimators);
    parallel_for(params.n_estimators, [&](std::size_t t) {
        Rng rng(derive_seed(params.seed, kind, {t}));
        if (!bootstrap) {
            trees[t] = train_tree(X, y, rows, params.tree, rng);
            return;
        }
        std::vector<std::size_t> sample(rows.size());
        for (auto& s : sample) s = rows[rng.index(rows.size())];
        trees[t] = train_tree(X, y, sample, params.tree, rng);
    });
    return ForestModel(kind, std::move(trees), bootstrap, params.seed);
}

}  // namespace

ForestModel train_extra_trees(const DenseMatrix& X, const Labels& y, std::span<const std::size_t> rows,
                              ForestParams params) {
    params.tree.split_rule = SplitRule::random_threshold;
    return train_forest(X, y, rows, params, false, "extra_trees");
}

ForestModel train_random_forest(const DenseMatrix& X, const Labels& y, std::span<const std::size_t> rows,
                                ForestParams params) {
    params.tree.split_rule = SplitRule::best_gini;
    return train_forest(X, y, rows, params, true, "random_forest");
}

}  // namespace revhawk::learners
