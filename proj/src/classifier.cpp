// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revhawk Contributors

#include "revhawk/learners/classifier.hpp"

#include <numeric>

#include "revhawk/learners/stacking.hpp"

namespace revhawk::learners {

std::vector<double> Classifier::predict_proba(const DenseMatrix& X) const {
    std::vector<double> p(X.rows());
    for (std::size_t r = 0; r < X.rows(); ++r) p[r] = predict_proba(X.row(r));
    return p;
}

Labels Classifier::predict(const DenseMatrix& X) const {
    Labels out;
    out.reserve(X.rows());
    for (std::size_t r = 0; r < X.rows(); ++r) out.push_back(label_from_proba(predict_proba(X.row(r))));
    return out;
}

std::vector<std::size_t> all_rows(std::size_t n) {
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), std::size_t{0});
    return v;
}

std::unique_ptr<Classifier> classifier_from_json(const json& doc) {
    try {
        const auto kind = doc.at("kind").get<std::string>();
        if (kind == "extra_trees" || kind == "random_forest") return std::make_unique<ForestModel>(ForestModel::from_json(doc));
        if (kind == "gradient_boosting") return std::make_unique<BoostedModel>(BoostedModel::from_json(doc));
        if (kind == "linear_svm" || kind == "logistic_regression")
            return std::make_unique<LinearModel>(LinearModel::from_json(doc));
        if (kind == "stacking") return std::make_unique<StackingModel>(StackingModel::from_json(doc));
        throw DataError("unknown model kind '" + kind + "'");
    } catch (const json::exception& e) {
        throw DataError(std::string("malformed model document: ") + e.what());
    }
}

}  // namespace revhawk::learners
