// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revhawk Contributors

#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "revhawk/common.hpp"
#include "revhawk/matrix.hpp"

namespace revhawk::learners {

using json = nlohmann::json;

/// Fitted binary classifier over dense rows. Probabilities are for class CG.
class Classifier {
public:
    virtual ~Classifier() = default;

    virtual std::string kind() const = 0;
    virtual double predict_proba(std::span<const double> row) const = 0;
    virtual json to_json() const = 0;

    std::vector<double> predict_proba(const DenseMatrix& X) const;
    /// Threshold 0.5 on the CG probability.
    Labels predict(const DenseMatrix& X) const;
};

/// Rebuilds any model written by Classifier::to_json. Throws DataError on an
/// unknown kind or malformed document.
std::unique_ptr<Classifier> classifier_from_json(const json& doc);

/// 0, 1, ..., n - 1.
std::vector<std::size_t> all_rows(std::size_t n);

inline Label label_from_proba(double p) noexcept { return p >= 0.5 ? Label::CG : Label::OR; }

}  // namespace revhawk::learners
