// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revhawk Contributors

#include "revhawk/learners/boosting.hpp"

#include <algorithm>
#include <cmath>

namespace revhawk::learners {

void BoostingParams::validate() const {
    if (n_estimators < 1) throw std::invalid_argument("boosting needs at least one stage");
    if (!(learning_rate > 0.0 && learning_rate <= 1.0)) throw std::invalid_argument("learning_rate must lie in (0, 1]");
    if (max_depth < 1) throw std::invalid_argument("boosting max_depth must be >= 1");
    if (min_samples_split < 2) throw std::invalid_argument("boosting min_samples_split must be >= 2");
    if (max_bins < 2 || max_bins > 256) throw std::invalid_argument("max_bins must lie in [2, 256]");
}

namespace {

double sigmoid(double z) noexcept {
    if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

}  // namespace

double BoostedModel::decision(std::span<const double> row) const {
    double f = initial_logit_;
    for (const auto& s : stages_) f += learning_rate_ * s.predict(row);
    return f;
}

double BoostedModel::predict_proba(std::span<const double> row) const { return sigmoid(decision(row)); }

json BoostedModel::to_json() const {
    json stages = json::array();
    for (const auto& s : stages_) stages.push_back(s.to_json());
    return {{"kind", kind()}, {"initial_logit", initial_logit_}, {"learning_rate", learning_rate_}, {"stages", stages}};
}

BoostedModel BoostedModel::from_json(const json& doc) {
    std::vector<DecisionTree> stages;
    for (const auto& s : doc.at("stages")) stages.push_back(DecisionTree::from_json(s));
    return BoostedModel(doc.at("initial_logit").get<double>(), doc.at("learning_rate").get<double>(),
                        std::move(stages));
}

double log_loss(const Labels& y, std::span<const double> p) {
    if (y.size() != p.size()) throw std::invalid_argument("labels and probabilities are not aligned");
    if (y.empty()) return 0.0;
    constexpr double eps = 1e-15;
    double sum = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double q = std::clamp(p[i], eps, 1.0 - eps);
        sum -= is_cg(y[i]) ? std::log(q) : std::log(1.0 - q);
    }
    return sum / static_cast<double>(y.size());
}

namespace {

/// Quantile bins per feature plus, for each row, the (feature, bin) pairs
/// that differ from the bin holding 0.0. Text features are mostly zero, so
/// histograms are built from those pairs alone.
class BinnedData {
public:
    BinnedData(const DenseMatrix& X, std::span<const std::size_t> rows, std::size_t max_bins)
        : n_features_(X.cols()), edges_(X.cols()), default_bin_(X.cols(), 0) {
        std::vector<double> values(rows.size());
        for (std::size_t f = 0; f < n_features_; ++f) {
            for (std::size_t i = 0; i < rows.size(); ++i) values[i] = X(rows[i], f);
            std::sort(values.begin(), values.end());
            edges_[f] = make_edges(values, max_bins);
            default_bin_[f] = bin_of(f, 0.0);
        }
        row_ptr_.assign(1, 0);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            auto row = X.row(rows[i]);
            for (std::size_t f = 0; f < n_features_; ++f) {
                if (edges_[f].empty()) continue;
                const auto b = bin_of(f, row[f]);
                if (b == default_bin_[f]) continue;
                entry_feature_.push_back(static_cast<std::uint32_t>(f));
                entry_bin_.push_back(b);
            }
            row_ptr_.push_back(entry_feature_.size());
        }
    }

    std::uint8_t bin_of(std::size_t f, double x) const {
        const auto& e = edges_[f];
        return static_cast<std::uint8_t>(std::lower_bound(e.begin(), e.end(), x) - e.begin());
    }

    /// Bin of local row i for feature f.
    std::uint8_t row_bin(std::size_t i, std::size_t f) const {
        auto b = entry_feature_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i]);
        auto e = entry_feature_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i + 1]);
        auto it = std::lower_bound(b, e, static_cast<std::uint32_t>(f));
        if (it == e || *it != f) return default_bin_[f];
        return entry_bin_[static_cast<std::size_t>(it - entry_feature_.begin())];
    }

    std::size_t n_features() const noexcept { return n_features_; }
    const std::vector<double>& edges(std::size_t f) const { return edges_[f]; }
    std::uint8_t default_bin(std::size_t f) const { return default_bin_[f]; }
    std::size_t entries_begin(std::size_t i) const { return row_ptr_[i]; }
    std::size_t entries_end(std::size_t i) const { return row_ptr_[i + 1]; }
    std::uint32_t entry_feature(std::size_t k) const { return entry_feature_[k]; }
    std::uint8_t entry_bin(std::size_t k) const { return entry_bin_[k]; }

private:
    static std::vector<double> make_edges(const std::vector<double>& sorted, std::size_t max_bins) {
        std::vector<double> edges;
        if (sorted.empty() || sorted.front() == sorted.back()) return edges;
        auto cut_after = [&](double a) {
            auto next = std::upper_bound(sorted.begin(), sorted.end(), a);
            if (next == sorted.end()) return;
            double t = a + (*next - a) / 2.0;
            if (!(t < *next)) t = a;
            if (edges.empty() || t > edges.back()) edges.push_back(t);
        };
        std::size_t distinct = 1;
        for (std::size_t i = 1; i < sorted.size() && distinct <= max_bins; ++i) distinct += sorted[i] != sorted[i - 1];
        if (distinct <= max_bins) {
            for (std::size_t i = 1; i < sorted.size(); ++i)
                if (sorted[i] != sorted[i - 1]) cut_after(sorted[i - 1]);
            return edges;
        }
        const std::size_t n = sorted.size();
        for (std::size_t q = 1; q < max_bins; ++q) cut_after(sorted[q * n / max_bins - (q * n / max_bins > 0)]);
        return edges;
    }

    std::size_t n_features_;
    std::vector<std::vector<double>> edges_;
    std::vector<std::uint8_t> default_bin_;
    std::vector<std::size_t> row_ptr_;
    std::vector<std::uint32_t> entry_feature_;
    std::vector<std::uint8_t> entry_bin_;
};

class RegressionTreeBuilder {
public:
    RegressionTreeBuilder(const BinnedData& data, const BoostingParams& p, std::size_t max_bins)
        : data_(data), p_(p), bins_(max_bins), sum_(data.n_features() * max_bins, 0.0),
          count_(data.n_features() * max_bins, 0), touched_(data.n_features(), 0) {}

    DecisionTree build(const std::vector<double>& residual) {
        residual_ = &residual;
        local_.resize(residual.size());
        for (std::size_t i = 0; i < local_.size(); ++i) local_[i] = i;
        nodes_.clear();
        grow(0, local_.size(), 0);
        return DecisionTree(std::move(nodes_));
    }

private:
    struct Best {
        std::int64_t feature = -1;
        std::uint8_t bin = 0;
        double gain = 1e-12;
    };

    std::size_t grow(std::size_t begin, std::size_t end, std::size_t depth) {
        const std::size_t id = nodes_.size();
        nodes_.emplace_back();
        const std::size_t n = end - begin;
        double g = 0.0;
        for (std::size_t i = begin; i < end; ++i) g += (*residual_)[local_[i]];
        nodes_[id].value = g / static_cast<double>(n);
        if (n < p_.min_samples_split || depth >= p_.max_depth) return id;

        const Best best = find_split(begin, end, g);
        if (best.feature < 0) return id;
        const auto f = static_cast<std::size_t>(best.feature);
        auto mid_it = std::stable_partition(local_.begin() + static_cast<std::ptrdiff_t>(begin),
                                            local_.begin() + static_cast<std::ptrdiff_t>(end),
                                            [&](std::size_t i) { return data_.row_bin(i, f) <= best.bin; });
        const auto mid = static_cast<std::size_t>(mid_it - local_.begin());
        if (mid == begin || mid == end) return id;
        nodes_[id].feature = static_cast<std::int32_t>(f);
        nodes_[id].threshold = data_.edges(f)[best.bin];
        const std::size_t left = grow(begin, mid, depth + 1);
        const std::size_t right = grow(mid, end, depth + 1);
        nodes_[id].left = static_cast<std::int32_t>(left);
        nodes_[id].right = static_cast<std::int32_t>(right);
        return id;
    }

    Best find_split(std::size_t begin, std::size_t end, double g_total) {
        touched_list_.clear();
        for (std::size_t i = begin; i < end; ++i) {
            const std::size_t row = local_[i];
            const double r = (*residual_)[row];
            for (std::size_t k = data_.entries_begin(row); k < data_.entries_end(row); ++k) {
                const std::size_t f = data_.entry_feature(k);
                if (!touched_[f]) {
                    touched_[f] = 1;
                    touched_list_.push_back(f);
                }
                const std::size_t at = f * bins_ + data_.entry_bin(k);
                sum_[at] += r;
                ++count_[at];
            }
        }
        std::sort(touched_list_.begin(), touched_list_.end());

        const auto n = static_cast<double>(end - begin);
        const double parent = g_total * g_total / n;
        Best best;
        for (std::size_t f : touched_list_) {
            const std::size_t nb = data_.edges(f).size() + 1;
            double* s = &sum_[f * bins_];
            std::uint32_t* c = &count_[f * bins_];
            double other_s = 0.0;
            std::size_t other_c = 0;
            for (std::size_t b = 0; b < nb; ++b) {
                other_s += s[b];
                other_c += c[b];
            }
            const std::uint8_t db = data_.default_bin(f);
            s[db] += g_total - other_s;
            c[db] += static_cast<std::uint32_t>(static_cast<std::size_t>(n) - other_c);

            double gl = 0.0;
            std::size_t nl = 0;
            for (std::size_t b = 0; b + 1 < nb; ++b) {
                gl += s[b];
                nl += c[b];
                if (nl == 0 || nl == static_cast<std::size_t>(n)) continue;
                const double gr = g_total - gl;
                const auto nr = n - static_cast<double>(nl);
                const double gain = gl * gl / static_cast<double>(nl) + gr * gr / nr - parent;
                if (gain > best.gain) best = {static_cast<std::int64_t>(f), static_cast<std::uint8_t>(b), gain};
            }
            std::fill_n(s, nb, 0.0);
            std::fill_n(c, nb, 0u);
            touched_[f] = 0;
        }
        return best;
    }

    const BinnedData& data_;
    const BoostingParams& p_;
    std::size_t bins_;
    std::vector<double> sum_;
    std::vector<std::uint32_t> count_;
    std::vector<std::uint8_t> touched_;
    std::vector<std::size_t> touched_list_;
    const std::vector<double>* residual_ = nullptr;
    std::vector<std::size_t> local_;
    std::vector<TreeNode> nodes_;
};

}  // namespace

BoostedModel train_gradient_boosting(const DenseMatrix& X, const Labels& y, std::span<const std::size_t> rows,
                                     const BoostingParams& params, std::vector<double>* loss_trace) {
    params.validate();
    if (rows.empty()) throw std::invalid_argument("cannot train boosting on zero rows");
    Labels ly;
    ly.reserve(rows.size());
    for (auto r : rows) ly.push_back(y.at(r));
    const ClassCounts counts = count_classes(ly);
    if (counts.original == 0 || counts.generated == 0)
        throw DataError("gradient boosting needs both classes (initial logit would be infinite)");

    const double rate = static_cast<double>(counts.generated) / static_cast<double>(ly.size());
    const double f0 = std::log(rate / (1.0 - rate));

    const BinnedData data(X, rows, params.max_bins);
    RegressionTreeBuilder builder(data, params, params.max_bins);

    std::vector<double> score(rows.size(), f0), prob(rows.size()), residual(rows.size());
    auto refresh = [&] {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            prob[i] = sigmoid(score[i]);
            residual[i] = as_target(ly[i]) - prob[i];
        }
    };
    refresh();
    if (loss_trace) {
        loss_trace->clear();
        loss_trace->push_back(log_loss(ly, prob));
    }

    std::vector<DecisionTree> stages;
    stages.reserve(params.n_estimators);
    for (std::size_t s = 0; s < params.n_estimators; ++s) {
        DecisionTree tree = builder.build(residual);
        for (std::size_t i = 0; i < rows.size(); ++i) score[i] += params.learning_rate * tree.predict(X.row(rows[i]));
        stages.push_back(std::move(tree));
        refresh();
        if (loss_trace) loss_trace->push_back(log_loss(ly, prob));
    }
    return BoostedModel(f0, params.learning_rate, std::move(stages));
}

}  // namespace revhawk::learners
