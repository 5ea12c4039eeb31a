// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revhawk Contributors

#include "revhawk/eval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>

namespace revhawk::eval {

json ConfusionMatrix::to_json() const { return {{"tp", tp}, {"tn", tn}, {"fp", fp}, {"fn", fn}}; }

ConfusionMatrix confusion(const Labels& truth, const Labels& predicted) {
    if (truth.size() != predicted.size())
        throw DataError("confusion: " + std::to_string(truth.size()) + " labels vs " +
                        std::to_string(predicted.size()) + " predictions");
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const bool t = is_cg(truth[i]), p = is_cg(predicted[i]);
        if (t && p)
            ++cm.tp;
        else if (t)
            ++cm.fn;
        else if (p)
            ++cm.fp;
        else
            ++cm.tn;
    }
    return cm;
}

json MetricReport::to_json() const {
    json j{{"accuracy", accuracy}, {"precision", precision}, {"recall", recall}, {"f1", f1}};
    j["auc"] = auc ? json(*auc) : json(nullptr);
    j["degenerate"] = {{"precision", precision_degenerate}, {"recall", recall_degenerate}, {"f1", f1_degenerate}};
    return j;
}

MetricReport metrics(const ConfusionMatrix& cm) {
    if (cm.total() == 0) throw DataError("metrics of an empty confusion matrix");
    MetricReport r;
    r.accuracy = static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.total());
    if (cm.tp + cm.fp > 0)
        r.precision = static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fp);
    else
        r.precision_degenerate = true;
    if (cm.tp + cm.fn > 0)
        r.recall = static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fn);
    else
        r.recall_degenerate = true;
    if (r.precision + r.recall > 0)
        r.f1 = 2.0 * r.precision * r.recall / (r.precision + r.recall);
    else
        r.f1_degenerate = true;
    return r;
}

double roc_auc(const Labels& truth, std::span<const double> scores) {
    if (truth.size() != scores.size()) throw DataError("roc_auc: labels and scores are not aligned");
    const ClassCounts c = count_classes(truth);
    if (c.generated == 0 || c.original == 0) throw DataError("roc_auc needs both classes");
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
    // Twice the rank sum keeps midranks integral.
    std::uint64_t twice_rank_sum = 0;
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
        const std::uint64_t twice_mid = i + j + 1;  // 2 * mean of ranks i+1 .. j
        for (std::size_t k = i; k < j; ++k)
            if (is_cg(truth[order[k]])) twice_rank_sum += twice_mid;
        i = j;
    }
    const auto n1 = static_cast<std::uint64_t>(c.generated), n0 = static_cast<std::uint64_t>(c.original);
    const double u = static_cast<double>(twice_rank_sum - n1 * (n1 + 1)) / 2.0;
    return u / (static_cast<double>(n1) * static_cast<double>(n0));
}

std::vector<RocPoint> roc_curve(const Labels& truth, std::span<const double> scores) {
    if (truth.size() != scores.size()) throw DataError("roc_curve: labels and scores are not aligned");
    const ClassCounts c = count_classes(truth);
    if (c.generated == 0 || c.original == 0) throw DataError("roc_curve needs both classes");
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    std::vector<RocPoint> curve{{0.0, 0.0, std::numeric_limits<double>::infinity()}};
    std::size_t tp = 0, fp = 0;
    for (std::size_t i = 0; i < order.size();) {
        const double s = scores[order[i]];
        while (i < order.size() && scores[order[i]] == s) (is_cg(truth[order[i++]]) ? tp : fp)++;
        curve.push_back({static_cast<double>(fp) / static_cast<double>(c.original),
                         static_cast<double>(tp) / static_cast<double>(c.generated), s});
    }
    return curve;
}

double trapezoid_area(std::span<const RocPoint> curve) {
    double area = 0.0;
    for (std::size_t i = 1; i < curve.size(); ++i)
        area += (curve[i].fpr - curve[i - 1].fpr) * (curve[i].tpr + curve[i - 1].tpr) / 2.0;
    return area;
}

void write_roc_csv(const std::filesystem::path& path, std::span<const RocPoint> curve, const std::string& comment) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    if (!comment.empty()) out << "# " << comment << '\n';
    out.precision(17);
    out << "fpr,tpr,threshold\n";
    for (const auto& p : curve) out << p.fpr << ',' << p.tpr << ',' << p.threshold << '\n';
}

MetricReport evaluate(const Labels& truth, std::span<const double> scores) {
    if (truth.size() != scores.size()) throw DataError("evaluate: labels and scores are not aligned");
    Labels pred;
    pred.reserve(scores.size());
    for (double p : scores) pred.push_back(p >= 0.5 ? Label::CG : Label::OR);
    MetricReport r = metrics(confusion(truth, pred));
    const ClassCounts c = count_classes(truth);
    if (c.generated > 0 && c.original > 0) r.auc = roc_auc(truth, scores);
    return r;
}

json CvSummary::to_json() const {
    json f = json::array();
    for (const auto& m : folds) f.push_back(m.to_json());
    return {{"folds", f}, {"mean", mean.to_json()}, {"std", stddev.to_json()}};
}

CvSummary summarize(std::vector<MetricReport> folds) {
    CvSummary s;
    s.folds = std::move(folds);
    if (s.folds.empty()) return s;
    const auto n = static_cast<double>(s.folds.size());
    auto stat = [&](auto get, double& mean, double& sd) {
        double sum = 0.0;
        for (const auto& m : s.folds) sum += get(m);
        mean = sum / n;
        double ss = 0.0;
        for (const auto& m : s.folds) ss += (get(m) - mean) * (get(m) - mean);
        sd = std::sqrt(ss / n);
    };
    stat([](const MetricReport& m) { return m.accuracy; }, s.mean.accuracy, s.stddev.accuracy);
    stat([](const MetricReport& m) { return m.precision; }, s.mean.precision, s.stddev.precision);
    stat([](const MetricReport& m) { return m.recall; }, s.mean.recall, s.stddev.recall);
    stat([](const MetricReport& m) { return m.f1; }, s.mean.f1, s.stddev.f1);
    const bool all_auc = std::all_of(s.folds.begin(), s.folds.end(), [](const MetricReport& m) { return m.auc.has_value(); });
    if (all_auc) {
        double mean = 0, sd = 0;
        stat([](const MetricReport& m) { return *m.auc; }, mean, sd);
        s.mean.auc = mean;
        s.stddev.auc = sd;
    }
    for (const auto& m : s.folds) {
        s.mean.precision_degenerate |= m.precision_degenerate;
        s.mean.recall_degenerate |= m.recall_degenerate;
        s.mean.f1_degenerate |= m.f1_degenerate;
    }
    return s;
}

CvSummary cross_validate(const Labels& labels, int k, std::uint64_t seed, const FoldRunner& run) {
    const auto folds = corpus::stratified_kfold(labels, k, derive_seed(seed, "cv"));
    std::vector<MetricReport> reports;
    reports.reserve(folds.size());
    for (std::size_t i = 0; i < folds.size(); ++i) reports.push_back(run(folds[i], i));
    return summarize(std::move(reports));
}

}  // namespace revhawk::eval
