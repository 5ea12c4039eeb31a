// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revhawk Contributors

#include "revhawk/learners/tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace revhawk::learners {

void TreeParams::validate() const {
    if (max_depth < 1) throw std::invalid_argument("tree max_depth must be >= 1");
    if (min_samples_split < 2) throw std::invalid_argument("tree min_samples_split must be >= 2");
}

std::size_t TreeParams::candidates_for(std::size_t n_features) const {
    if (n_candidate_features > 0) return std::min(n_candidate_features, n_features);
    const auto m = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n_features))));
    return std::clamp<std::size_t>(m, 1, std::max<std::size_t>(n_features, 1));
}

double DecisionTree::predict(std::span<const double> row) const noexcept {
    std::size_t i = 0;
    while (!nodes_[i].is_leaf()) {
        const auto& n = nodes_[i];
        i = static_cast<std::size_t>(row[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right);
    }
    return nodes_[i].value;
}

std::size_t DecisionTree::depth() const {
    if (nodes_.empty()) return 0;
    std::vector<std::size_t> d(nodes_.size(), 0);
    std::size_t best = 0;
    // Children always follow their parent in node order.
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const auto& n = nodes_[i];
        if (n.is_leaf()) {
            best = std::max(best, d[i]);
            continue;
        }
        d[static_cast<std::size_t>(n.left)] = d[i] + 1;
        d[static_cast<std::size_t>(n.right)] = d[i] + 1;
    }
    return best;
}

json DecisionTree::to_json() const {
    json f = json::array(), t = json::array(), l = json::array(), r = json::array(), v = json::array();
    for (const auto& n : nodes_) {
        f.push_back(n.feature);
        t.push_back(n.threshold);
        l.push_back(n.left);
        r.push_back(n.right);
        v.push_back(n.value);
    }
    return {{"feature", f}, {"threshold", t}, {"left", l}, {"right", r}, {"value", v}};
}

DecisionTree DecisionTree::from_json(const json& doc) {
    const auto& f = doc.at("feature");
    const std::size_t n = f.size();
    std::vector<TreeNode> nodes(n);
    for (std::size_t i = 0; i < n; ++i) {
        nodes[i].feature = f.at(i).get<std::int32_t>();
        nodes[i].threshold = doc.at("threshold").at(i).get<double>();
        nodes[i].left = doc.at("left").at(i).get<std::int32_t>();
        nodes[i].right = doc.at("right").at(i).get<std::int32_t>();
        nodes[i].value = doc.at("value").at(i).get<double>();
        if (!nodes[i].is_leaf()) {
            auto ok = [&](std::int32_t c) { return c > static_cast<std::int32_t>(i) && c < static_cast<std::int32_t>(n); };
            if (!ok(nodes[i].left) || !ok(nodes[i].right)) throw DataError("tree node has an invalid child index");
        }
    }
    if (nodes.empty()) throw DataError("tree has no nodes");
    return DecisionTree(std::move(nodes));
}

namespace {

struct Split {
    std::int32_t feature = -1;
    double threshold = 0.0;
    double score = -std::numeric_limits<double>::infinity();  // higher is better
};

class TreeBuilder {
public:
    TreeBuilder(const DenseMatrix& X, const Labels& y, const TreeParams& p, Rng& rng)
        : X_(X), y_(y), p_(p), rng_(rng), features_(X.cols()) {
        for (std::size_t f = 0; f < features_.size(); ++f) features_[f] = f;
        budget_ = p.candidates_for(X.cols());
    }

    std::vector<TreeNode> build(std::vector<std::size_t> rows) {
        rows_ = std::move(rows);
        grow(0, rows_.size(), 0);
        return std::move(nodes_);
    }

private:
    static double leaf_value(std::size_t n, std::size_t n_cg) {
        return (static_cast<double>(n_cg) + 1.0) / (static_cast<double>(n) + 2.0);
    }

    // Sum over children of (class count)^2 / child size; larger means lower
    // weighted Gini impurity.
    static double purity(std::size_t nl, std::size_t cl, std::size_t nr, std::size_t cr) {
        auto part = [](double n, double c) { return (c * c + (n - c) * (n - c)) / n; };
        return part(static_cast<double>(nl), static_cast<double>(cl)) +
               part(static_cast<double>(nr), static_cast<double>(cr));
    }

    std::size_t grow(std::size_t begin, std::size_t end, std::size_t depth) {
        const std::size_t id = nodes_.size();
        nodes_.emplace_back();
        const std::size_t n = end - begin;
        std::size_t n_cg = 0;
        for (std::size_t i = begin; i < end; ++i) n_cg += is_cg(y_[rows_[i]]);
        nodes_[id].value = leaf_value(n, n_cg);
        if (n < p_.min_samples_split || depth >= p_.max_depth || n_cg == 0 || n_cg == n) return id;

        const Split best = find_split(begin, end, n_cg);
        if (best.feature < 0) return id;

        const auto f = static_cast<std::size_t>(best.feature);
        auto mid_it = std::partition(rows_.begin() + static_cast<std::ptrdiff_t>(begin),
                                     rows_.begin() + static_cast<std::ptrdiff_t>(end),
                                     [&](std::size_t r) { return X_(r, f) <= best.threshold; });
        const auto mid = static_cast<std::size_t>(mid_it - rows_.begin());
        if (mid == begin || mid == end) return id;

        nodes_[id].feature = best.feature;
        nodes_[id].threshold = best.threshold;
        const std::size_t left = grow(begin, mid, depth + 1);
        const std::size_t right = grow(mid, end, depth + 1);
        nodes_[id].left = static_cast<std::int32_t>(left);
        nodes_[id].right = static_cast<std::int32_t>(right);
        return id;
    }

    Split find_split(std::size_t begin, std::size_t end, std::size_t n_cg) {
        Split best;
        std::size_t evaluated = 0;
        // Partial Fisher-Yates over the feature list: draw until the budget of
        // non-constant features is spent or every feature has been seen.
        for (std::size_t drawn = 0; drawn < features_.size() && evaluated < budget_; ++drawn) {
            const std::size_t pick = drawn + rng_.index(features_.size() - drawn);
            std::swap(features_[drawn], features_[pick]);
            const std::size_t f = features_[drawn];
            const bool non_constant = p_.split_rule == SplitRule::best_gini
                                          ? scan_feature(f, begin, end, n_cg, best)
                                          : random_cut(f, begin, end, n_cg, best);
            evaluated += non_constant;
        }
        return best;
    }

    bool scan_feature(std::size_t f, std::size_t begin, std::size_t end, std::size_t n_cg, Split& best) {
        // Zeros dominate sparse text features; only the non-zero parts are sorted.
        neg_.clear();
        pos_.clear();
        std::size_t zeros = 0, zeros_cg = 0;
        for (std::size_t i = begin; i < end; ++i) {
            const std::size_t r = rows_[i];
            const double v = X_(r, f);
            const bool cg = is_cg(y_[r]);
            if (v < 0.0)
                neg_.emplace_back(v, cg);
            else if (v > 0.0)
                pos_.emplace_back(v, cg);
            else {
                ++zeros;
                zeros_cg += cg;
            }
        }
        const std::size_t n = end - begin;
        if (zeros == n) return false;
        std::sort(neg_.begin(), neg_.end());
        std::sort(pos_.begin(), pos_.end());
        if (zeros == 0) {
            const double lo = neg_.empty() ? pos_.front().first : neg_.front().first;
            const double hi = pos_.empty() ? neg_.back().first : pos_.back().first;
            if (lo == hi) return false;
        }

        std::size_t nl = 0, cl = 0;
        double prev = 0.0;
        bool have_prev = false;
        auto consider = [&](double next_value) {
            if (have_prev && nl > 0 && nl < n && next_value > prev) {
                const double s = purity(nl, cl, n - nl, n_cg - cl);
                if (s > best.score) {
                    double t = prev + (next_value - prev) / 2.0;
                    if (!(t < next_value)) t = prev;
                    best = {static_cast<std::int32_t>(f), t, s};
                }
            }
        };
        for (const auto& [v, cg] : neg_) {
            consider(v);
            ++nl;
            cl += cg;
            prev = v;
            have_prev = true;
        }
        if (zeros) {
            consider(0.0);
            nl += zeros;
            cl += zeros_cg;
            prev = 0.0;
            have_prev = true;
        }
        for (const auto& [v, cg] : pos_) {
            consider(v);
            ++nl;
            cl += cg;
            prev = v;
            have_prev = true;
        }
        return true;
    }

    bool random_cut(std::size_t f, std::size_t begin, std::size_t end, std::size_t n_cg, Split& best) {
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (std::size_t i = begin; i < end; ++i) {
            const double v = X_(rows_[i], f);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        if (!(lo < hi)) return false;
        double t = rng_.uniform(lo, hi);
        if (!(t < hi)) t = lo;
        std::size_t nl = 0, cl = 0;
        for (std::size_t i = begin; i < end; ++i) {
            const std::size_t r = rows_[i];
            if (X_(r, f) <= t) {
                ++nl;
                cl += is_cg(y_[r]);
            }
        }
        const std::size_t n = end - begin;
        const double s = purity(nl, cl, n - nl, n_cg - cl);
        if (s > best.score) best = {static_cast<std::int32_t>(f), t, s};
        return true;
    }

    const DenseMatrix& X_;
    const Labels& y_;
    const TreeParams& p_;
    Rng& rng_;
    std::vector<std::size_t> features_;
    std::size_t budget_ = 1;
    std::vector<std::size_t> rows_;
    std::vector<TreeNode> nodes_;
    std::vector<std::pair<double, bool>> neg_, pos_;
};

}  // namespace

DecisionTree train_tree(const DenseMatrix& X, const Labels& y, std::span<const std::size_t> rows,
                        const TreeParams& params, Rng& rng) {
    params.validate();
    if (rows.empty()) throw std::invalid_argument("cannot train a tree on zero rows");
    if (X.rows() != y.size()) throw std::invalid_argument("rows and labels are not aligned");
    TreeBuilder builder(X, y, params, rng);
    return DecisionTree(builder.build({rows.begin(), rows.end()}));
}

}  // namespace revhawk::learners
