// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revhawk Contributors

// One PASS/FAIL line per acceptance criterion. Every tolerance is pinned here.
//
// Criteria 6-9 need a labeled review table. REVHAWK_DATASET points at a real
// CSV (category,rating,label,text_); without it a deterministic synthetic
// table of kSyntheticRows rows stands in.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "revhawk/bundle.hpp"
#include "revhawk/eval.hpp"
#include "revhawk/hho.hpp"
#include "revhawk/learners/stacking.hpp"
#include "revhawk/neighbors.hpp"
#include "revhawk/pipeline.hpp"
#include "revhawk/resample.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "support/synthetic_reviews.hpp"

using namespace revhawk;
namespace fs = std::filesystem;

namespace {

// Criterion 1
constexpr double kMetricTolerancePp = 0.005;
// Criterion 2: target order from the reference run (worst of 20 seeds ~1e-43).
constexpr double kSphereThreshold = 1e-4;
constexpr std::size_t kSphereSeeds = 20;
// Criterion 3
constexpr std::size_t kRecoveryRows = 600;
constexpr std::size_t kInformative = 10;
constexpr std::size_t kNoise = 90;
constexpr double kRecoveryLabelNoise = 1.0;
constexpr int kMinMedianRecovered = 8;
// Criterion 4
constexpr double kSegmentTolerance = 1e-9;
constexpr std::size_t kEnnInstances = 50;
constexpr std::size_t kEnnPoints = 30;
// Criterion 5
constexpr double kGradientRelTolerance = 1e-5;
constexpr double kLossMonotoneSlack = 1e-12;
constexpr double kProbabilitySumTolerance = 1e-9;
constexpr std::size_t kAucInstances = 100;
constexpr std::size_t kAucMaxRows = 500;
// Criterion 6
constexpr std::size_t kStackingRows = 2000;
constexpr double kStackingSlackPp = 0.5;
// Criterion 7
constexpr std::size_t kEndToEndRows = 4000;
constexpr double kMinAccuracy = 0.85;
constexpr double kMinAuc = 0.90;
// Synthetic stand-in table.
constexpr std::size_t kSyntheticRows = 8000;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

// ---------------------------------------------------------------------------

Outcome metrics_oracle() {
    const auto m = eval::metrics({.tp = 1162, .tn = 1973, .fp = 90, .fn = 61});
    const double reference[] = {95.40, 92.81, 95.01, 93.90};
    const double got[] = {100 * m.accuracy, 100 * m.precision, 100 * m.recall, 100 * m.f1};
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) worst = std::max(worst, std::abs(got[i] - reference[i]));
    return {worst <= kMetricTolerancePp,
            fmt("accuracy %.4f%% precision %.4f%% recall %.4f%% f1 %.4f%%, max deviation %.4f pp (tolerance %.3f pp)",
                got[0], got[1], got[2], got[3], worst, kMetricTolerancePp)};
}

Outcome hho_sanity() {
    double worst = 0.0;
    bool monotone = true;
    for (std::uint64_t seed = 0; seed < kSphereSeeds; ++seed) {
        hho::HHOParams p;
        p.n_hawks = 30;
        p.n_iterations = 200;
        p.lower = {-10.0};
        p.upper = {10.0};
        p.seed = seed;
        auto r = hho::minimize(
            [](std::span<const double> x) {
                double s = 0.0;
                for (double v : x) s += v * v;
                return s;
            },
            10, p);
        worst = std::max(worst, r.fitness);
        for (std::size_t i = 1; i < r.history.size(); ++i) monotone &= r.history[i] <= r.history[i - 1];
    }
    return {worst < kSphereThreshold && monotone,
            fmt("worst best-fitness over %zu seeds %.3e (threshold %.0e), histories monotone: %s", kSphereSeeds, worst,
                kSphereThreshold, monotone ? "yes" : "no")};
}

std::pair<std::vector<int>, std::vector<std::size_t>> recovery_run(std::uint64_t data_base) {
    const auto desk = pipeline::PipelineConfig::for_profile(pipeline::Profile::desk);
    std::vector<int> recovered;
    std::vector<std::size_t> selected;
    for (std::uint64_t s = 0; s < 5; ++s) {
        auto d = testing::informative_columns(kRecoveryRows, kInformative, kNoise, kRecoveryLabelNoise, data_base + s);
        auto params = desk.hho_params();
        params.seed = s;
        auto r = hho::select_features(to_sparse(d.X), d.y, params, desk.fitness_params(), desk.knn_params());
        int hit = 0;
        for (std::size_t j = 0; j < kInformative; ++j) hit += r.mask[j];
        recovered.push_back(hit);
        selected.push_back(r.mask.selected_count());
    }
    return {recovered, selected};
}

int median_of(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

std::string join(const auto& v) {
    std::string s;
    for (auto x : v) s += (s.empty() ? "" : " ") + std::to_string(x);
    return s;
}

Outcome feature_recovery() {
    auto [recovered, selected] = recovery_run(0);
    const int median = median_of(recovered);
    const bool reduced = std::all_of(selected.begin(), selected.end(), [](auto c) { return c < kInformative + kNoise; });
    // Other generator draws, reported only, to show the spread of the statistic.
    std::string spread;
    for (std::uint64_t batch = 1; batch <= 3; ++batch) spread += " " + std::to_string(median_of(recovery_run(1000 * batch).first));
    return {median >= kMinMedianRecovered && reduced,
            fmt("recovered [%s] median %d (need >= %d), selected [%s] (need < %zu each); medians on other draws:%s",
                join(recovered).c_str(), median, kMinMedianRecovered, join(selected).c_str(), kInformative + kNoise,
                spread.c_str())};
}

Outcome resampling_oracles() {
    Rng rng(derive_seed(4, "acceptance-smote"));
    std::size_t synthetic = 0, off_segment = 0;
    for (std::size_t inst = 0; inst < 10; ++inst) {
        const std::size_t n = 3 + rng.index(8), dim = 1 + rng.index(5);
        DenseMatrix minority(n, dim);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < dim; ++j) minority(i, j) = rng.uniform(-5, 5);
        auto syn = resample::smote(minority, 100, std::min<std::size_t>(5, n - 1), rng);
        for (std::size_t i = 0; i < syn.rows(); ++i) {
            ++synthetic;
            off_segment += !oracle::on_some_segment(syn.row(i), minority, kSegmentTolerance);
        }
    }
    // Synthetic rows produced inside SMOTEENN must pass the same test.
    auto blobs = testing::gaussian_blobs(120, 3, 0.7, 5);
    DenseMatrix X, minority;
    Labels y;
    std::size_t cg = 0;
    for (std::size_t i = 0; i < blobs.X.rows(); ++i) {
        if (is_cg(blobs.y[i]) && cg++ >= 20) continue;
        X.append_row(blobs.X.row(i));
        y.push_back(blobs.y[i]);
        if (is_cg(blobs.y[i])) minority.append_row(blobs.X.row(i));
    }
    auto rs = resample::smoteenn(X, y, {.seed = 3});
    for (std::size_t i = 0; i < rs.X.rows(); ++i)
        if (rs.provenance[i] == resample::Provenance::synthetic) {
            ++synthetic;
            off_segment += !oracle::on_some_segment(rs.X.row(i), minority, kSegmentTolerance);
        }

    std::size_t enn_mismatch = 0;
    for (std::size_t inst = 0; inst < kEnnInstances; ++inst) {
        auto d = testing::random_dataset(kEnnPoints, 1 + inst % 4, derive_seed(11, "acceptance-enn", {inst}));
        for (std::size_t k : {1u, 3u, 5u}) enn_mismatch += resample::enn(d.X, d.y, k) != oracle::enn(d.X, d.y, k);
    }
    return {off_segment == 0 && enn_mismatch == 0,
            fmt("%zu/%zu synthetic rows on a minority segment (tol %.0e); ENN mismatches %zu over %zu instances x k in {1,3,5}",
                synthetic - off_segment, synthetic, kSegmentTolerance, enn_mismatch, kEnnInstances)};
}

Outcome learner_properties() {
    using namespace learners;
    // Logistic-regression gradient against central differences.
    double worst_grad = 0.0;
    {
        auto d = testing::random_dataset(120, 6, 17);
        auto rows = all_rows(120);
        Rng rng(5);
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<double> theta(7);
            for (auto& t : theta) t = rng.uniform(-2, 2);
            auto g = logistic_gradient(d.X, d.y, rows, 0.05, theta);
            auto n = oracle::numeric_gradient(
                [&](const std::vector<double>& t) { return logistic_loss(d.X, d.y, rows, 0.05, t); }, theta, 1e-6);
            for (std::size_t i = 0; i < g.size(); ++i)
                worst_grad = std::max(worst_grad, std::abs(g[i] - n[i]) / std::max(std::abs(n[i]), 1e-8));
        }
    }
    // Boosting loss per stage.
    double worst_rise = -std::numeric_limits<double>::infinity();
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto d = testing::random_dataset(300, 5, 40 + seed);
        std::vector<double> trace;
        train_gradient_boosting(d.X, d.y, all_rows(300), {.n_estimators = 50, .max_depth = 4, .seed = seed}, &trace);
        for (std::size_t i = 1; i < trace.size(); ++i) worst_rise = std::max(worst_rise, trace[i] - trace[i - 1]);
    }
    // Forest probabilities.
    double worst_sum = 0.0;
    bool in_range = true;
    {
        auto d = testing::gaussian_blobs(300, 4, 0.4, 8);
        ForestParams fp;
        fp.n_estimators = 30;
        fp.seed = 2;
        for (const auto& f : {train_extra_trees(d.X, d.y, all_rows(200), fp), train_random_forest(d.X, d.y, all_rows(200), fp)})
            for (double p : f.predict_proba(d.X)) {
                in_range &= p >= 0.0 && p <= 1.0;
                worst_sum = std::max(worst_sum, std::abs(p + (1.0 - p) - 1.0));
            }
    }
    // Rank AUC against the pairwise oracle.
    std::size_t auc_mismatch = 0;
    Rng rng(derive_seed(6, "acceptance-auc"));
    for (std::size_t inst = 0; inst < kAucInstances; ++inst) {
        const std::size_t n = 2 + rng.index(kAucMaxRows - 1);
        Labels y;
        std::vector<double> s;
        const bool ties = inst % 2 == 0;
        for (std::size_t i = 0; i < n; ++i) {
            y.push_back(i == 0 ? Label::CG : i == 1 ? Label::OR : (rng.uniform() < 0.5 ? Label::CG : Label::OR));
            s.push_back(ties ? static_cast<double>(rng.index(15)) : rng.uniform());
        }
        auc_mismatch += eval::roc_auc(y, s) != oracle::pairwise_auc(y, s);
    }
    const bool pass = worst_grad <= kGradientRelTolerance && worst_rise <= kLossMonotoneSlack && in_range &&
                      worst_sum <= kProbabilitySumTolerance && auc_mismatch == 0;
    return {pass, fmt("gradient rel err %.2e (tol %.0e); max per-stage loss change %.2e (slack %.0e); forest probs in "
                      "[0,1]: %s, sum err %.1e; AUC mismatches %zu/%zu",
                      worst_grad, kGradientRelTolerance, worst_rise, kLossMonotoneSlack, in_range ? "yes" : "no",
                      worst_sum, auc_mismatch, kAucInstances)};
}

// ---------------------------------------------------------------------------
// Pipeline criteria

struct Context {
    corpus::Corpus table;
    std::string source;
    pipeline::TextResources res;
};

Context& context() {
    static Context ctx = [] {
        Context c;
        if (const char* path = std::getenv("REVHAWK_DATASET"); path && *path) {
            c.table = corpus::load_corpus(path);
            c.source = std::string("dataset ") + path;
        } else {
            c.table = testing::synthetic_reviews({.rows = kSyntheticRows, .seed = 7});
            c.source = "synthetic table";
        }
        c.res = pipeline::TextResources::load(testing::resource_dir());
        return c;
    }();
    return ctx;
}

pipeline::PipelineConfig desk_config() {
    auto c = pipeline::PipelineConfig::for_profile(pipeline::Profile::desk);
    c.stage_order = pipeline::StageOrder::standard;
    return c;
}

corpus::Corpus sample(std::size_t rows) {
    return pipeline::sample_corpus(context().table, rows, desk_config().seed);
}

Outcome stacking_benefit() {
    auto corpus = sample(kStackingRows);
    auto out = pipeline::train(corpus, desk_config(), context().res);
    double best = 0.0;
    std::string bases;
    for (const auto& [name, m] : out.base_metrics) {
        best = std::max(best, m.accuracy);
        bases += fmt(" %s %.2f%%", name.c_str(), 100 * m.accuracy);
    }
    const double stack = out.test_metrics.accuracy;
    return {100 * stack >= 100 * best - kStackingSlackPp,
            fmt("%zu rows of the %s: stacking %.2f%% vs best base %.2f%% (slack %.1f pp);%s", corpus.size(),
                context().source.c_str(), 100 * stack, 100 * best, kStackingSlackPp, bases.c_str())};
}

struct EndToEnd {
    pipeline::TrainOutcome outcome;
    double seconds = 0.0;
};

EndToEnd run_end_to_end(const fs::path& out_dir) {
    auto corpus = sample(kEndToEndRows);
    const auto cfg = desk_config();
    const auto t0 = std::chrono::steady_clock::now();
    EndToEnd e{pipeline::train(corpus, cfg, context().res), 0.0};
    bundle::write_training_artifacts(e.outcome, cfg, out_dir);
    e.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return e;
}

Outcome end_to_end(const EndToEnd& e) {
    const auto& m = e.outcome.test_metrics;
    const double auc = m.auc.value_or(0.0);
    return {m.accuracy >= kMinAccuracy && auc >= kMinAuc,
            fmt("%zu rows, standard order, desk profile: accuracy %.2f%% (need >= %.0f%%), AUC %.4f (need >= %.2f), "
                "%zu of %zu features kept, %.0f s",
                kEndToEndRows, 100 * m.accuracy, 100 * kMinAccuracy, auc, kMinAuc, e.outcome.selected_dim,
                e.outcome.total_dim, e.seconds)};
}

Outcome leakage_guard() {
    auto corpus = sample(kStackingRows);
    const auto cfg = desk_config();
    auto clean = pipeline::train(corpus, cfg, context().res);
    std::vector<corpus::ReviewRecord> records = corpus.records();
    for (auto r : clean.test_rows)
        records[r].text = "ZZZ leak probe!!! " + records[r].text + " quantum zebra marmalade??? 12345";
    auto poisoned = pipeline::train(corpus::Corpus(std::move(records)), cfg, context().res);
    const auto& a = clean.fingerprints;
    const auto& b = poisoned.fingerprints;
    const bool same = a == b;
    const bool scores_moved = clean.test_scores != poisoned.test_scores;
    return {same, fmt("%zu test texts rewritten; features %s, mask %s, resampled %s, models %s; held-out scores %s",
                      clean.test_rows.size(), a.features == b.features ? "unchanged" : "CHANGED",
                      a.mask == b.mask ? "unchanged" : "CHANGED", a.resampled == b.resampled ? "unchanged" : "CHANGED",
                      a.models == b.models ? "unchanged" : "CHANGED", scores_moved ? "changed" : "unchanged")};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

Outcome determinism(const fs::path& first, const fs::path& second) {
    std::size_t files = 0, differing = 0;
    std::string first_diff;
    for (const auto& entry : fs::recursive_directory_iterator(first)) {
        if (!entry.is_regular_file()) continue;
        ++files;
        const auto rel = fs::relative(entry.path(), first);
        if (!fs::exists(second / rel) || slurp(entry.path()) != slurp(second / rel)) {
            ++differing;
            if (first_diff.empty()) first_diff = rel.string();
        }
    }
    std::size_t second_files = 0;
    for (const auto& entry : fs::recursive_directory_iterator(second)) second_files += entry.is_regular_file();
    const bool metrics_present = fs::exists(first / "metrics.json") && fs::exists(first / "bundle" / "bundle.json");
    return {metrics_present && differing == 0 && files == second_files,
            fmt("%zu artifact files compared byte for byte (metrics report and bundle included), %zu differ%s%s", files,
                differing, first_diff.empty() ? "" : ", first: ", first_diff.c_str())};
}

}  // namespace

int main() {
    int failures = 0;
    auto report = [&](int id, const char* name, const std::function<Outcome()>& run) {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failures += !o.pass;
        std::printf("%s criterion %d (%s): %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
        std::fflush(stdout);
    };

    report(1, "metrics oracle", metrics_oracle);
    report(2, "HHO sphere", hho_sanity);
    report(3, "feature-selection recovery", feature_recovery);
    report(4, "resampling oracles", resampling_oracles);
    report(5, "learner properties", learner_properties);
    report(6, "stacking benefit", stacking_benefit);

    const fs::path scratch = fs::temp_directory_path() / "revhawk-acceptance";
    fs::remove_all(scratch);
    std::optional<EndToEnd> first;
    report(7, "end-to-end desk run", [&] {
        first = run_end_to_end(scratch / "run1");
        return end_to_end(*first);
    });
    report(8, "leakage guard", leakage_guard);
    report(9, "determinism", [&] {
        if (!first) return Outcome{false, "first run did not complete"};
        run_end_to_end(scratch / "run2");
        return determinism(scratch / "run1", scratch / "run2");
    });
    return failures == 0 ? 0 : 1;
}
