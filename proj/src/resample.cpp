// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revhawk Contributors

#include "revhawk/resample.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "revhawk/neighbors.hpp"

namespace revhawk::resample {

void ResampleParams::validate() const {
    if (smote_k < 1) throw std::invalid_argument("smote_k must be >= 1");
    if (enn_k < 1 || enn_k % 2 == 0) throw std::invalid_argument("enn_k must be odd and >= 1");
    if (!(target_ratio > 0.0 && target_ratio <= 1.0)) throw std::invalid_argument("target_ratio must lie in (0, 1]");
}

std::string ResampleReport::to_json() const {
    std::ostringstream os;
    os << "{\"event\":\"resample\",\"input\":{\"OR\":" << input.original << ",\"CG\":" << input.generated
       << "},\"synthetic\":" << synthetic << ",\"synthetic_class\":\"" << label_name(synthetic_class)
       << "\",\"removed\":{\"OR\":" << removed.original << ",\"CG\":" << removed.generated << "},\"output\":{\"OR\":"
       << output.original << ",\"CG\":" << output.generated << "}}";
    return os.str();
}

DenseMatrix smote(const DenseMatrix& minority, std::size_t n_synthetic, std::size_t k, Rng& rng) {
    const std::size_t m = minority.rows();
    if (m < 2) throw DataError("SMOTE needs at least 2 minority rows");
    if (k < 1 || k > m - 1) throw std::invalid_argument("SMOTE k must lie in [1, minority rows - 1]");

    const FeatureMatrix sparse = to_sparse(minority);
    const NeighborIndex index(sparse);
    std::vector<std::vector<std::size_t>> neighbours(m);
    parallel_for(m, [&](std::size_t i) { neighbours[i] = index.query(sparse.row(i), k, i); });

    DenseMatrix out(n_synthetic, minority.cols());
    for (std::size_t s = 0; s < n_synthetic; ++s) {
        const std::size_t i = rng.index(m);
        const std::size_t j = neighbours[i][rng.index(neighbours[i].size())];
        const double u = rng.uniform();
        auto a = minority.row(i);
        auto b = minority.row(j);
        auto o = out.row(s);
        for (std::size_t c = 0; c < o.size(); ++c) o[c] = a[c] + u * (b[c] - a[c]);
    }
    return out;
}

std::vector<std::size_t> enn(const DenseMatrix& X, const Labels& y, std::size_t k) {
    if (X.rows() != y.size()) throw std::invalid_argument("rows and labels are not aligned");
    if (k < 1 || k >= X.rows()) throw std::invalid_argument("ENN k must lie in [1, rows - 1]");

    const FeatureMatrix sparse = to_sparse(X);
    const NeighborIndex index(sparse);
    std::vector<std::uint8_t> keep(X.rows(), 0);
    parallel_for(X.rows(), [&](std::size_t i) {
        const auto nn = index.query(sparse.row(i), k, i);
        std::size_t same = 0;
        for (auto j : nn) same += y[j] == y[i];
        keep[i] = 2 * same >= nn.size();
    });
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < keep.size(); ++i)
        if (keep[i]) kept.push_back(i);
    return kept;
}

ResampledSet smoteenn(const DenseMatrix& X, const Labels& y, const ResampleParams& params) {
    params.validate();
    if (X.rows() != y.size()) throw std::invalid_argument("rows and labels are not aligned");
    const ClassCounts counts = count_classes(y);
    if (counts.original == 0 || counts.generated == 0) throw DataError("resampling needs both classes present");

    ResampledSet out;
    out.report.input = counts;
    out.X = X;
    out.y = y;
    out.provenance.assign(y.size(), Provenance::original);
    out.source_row.resize(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) out.source_row[i] = i;

    const Label minority = counts.generated < counts.original ? Label::CG : Label::OR;
    const std::size_t n_min = counts.of(minority);
    const std::size_t n_maj = counts.total() - n_min;
    const auto target = static_cast<std::size_t>(std::llround(params.target_ratio * static_cast<double>(n_maj)));
    out.report.synthetic_class = minority;
    if (target > n_min) {
        std::vector<std::size_t> rows;
        for (std::size_t i = 0; i < y.size(); ++i)
            if (y[i] == minority) rows.push_back(i);
        const DenseMatrix min_x = X.select_rows(rows);
        Rng rng(derive_seed(params.seed, "smote"));
        const std::size_t k = std::min(params.smote_k, n_min - 1);
        const DenseMatrix synth = smote(min_x, target - n_min, k, rng);
        for (std::size_t s = 0; s < synth.rows(); ++s) {
            out.X.append_row(synth.row(s));
            out.y.push_back(minority);
            out.provenance.push_back(Provenance::synthetic);
            out.source_row.push_back(std::numeric_limits<std::size_t>::max());
        }
        out.report.synthetic = synth.rows();
    }

    const auto kept = enn(out.X, out.y, params.enn_k);
    ResampledSet cleaned;
    cleaned.report = out.report;
    cleaned.X = out.X.select_rows(kept);
    for (auto i : kept) {
        cleaned.y.push_back(out.y[i]);
        cleaned.provenance.push_back(out.provenance[i]);
        cleaned.source_row.push_back(out.source_row[i]);
    }
    const ClassCounts before = count_classes(out.y);
    cleaned.report.output = count_classes(cleaned.y);
    cleaned.report.removed = {before.original - cleaned.report.output.original,
                              before.generated - cleaned.report.output.generated};
    cleaned.removed_count = out.y.size() - kept.size();
    return cleaned;
}

}  // namespace revhawk::resample
