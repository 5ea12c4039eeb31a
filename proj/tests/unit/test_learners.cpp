// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revhawk Contributors

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "revhawk/eval.hpp"
#include "revhawk/learners/stacking.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace revhawk;
using namespace revhawk::learners;

namespace {

std::vector<std::size_t> range(std::size_t a, std::size_t b) {
    std::vector<std::size_t> r;
    for (std::size_t i = a; i < b; ++i) r.push_back(i);
    return r;
}

double held_out_accuracy(const Classifier& m, const testing::Dataset& d, std::size_t from) {
    std::size_t ok = 0;
    for (std::size_t i = from; i < d.X.rows(); ++i) ok += label_from_proba(m.predict_proba(d.X.row(i))) == d.y[i];
    return static_cast<double>(ok) / static_cast<double>(d.X.rows() - from);
}

}  // namespace

TEST_CASE("tree basics") {
    Rng rng(1);
    SUBCASE("pure input is a smoothed leaf") {
        DenseMatrix X(4, 2, 1.0);
        Labels y(4, Label::CG);
        auto t = train_tree(X, y, all_rows(4), {}, rng);
        REQUIRE(t.nodes().size() == 1);
        CHECK(t.predict(X.row(0)) == doctest::Approx(5.0 / 6.0));
        CHECK(t.depth() == 0);
    }
    SUBCASE("two separable points") {
        DenseMatrix X(2, 1);
        X(0, 0) = -1;
        X(1, 0) = 1;
        Labels y{Label::OR, Label::CG};
        auto t = train_tree(X, y, all_rows(2), {.n_candidate_features = 1}, rng);
        CHECK(t.predict(X.row(0)) < 0.5);
        CHECK(t.predict(X.row(1)) > 0.5);
    }
    SUBCASE("xor") {
        DenseMatrix X(4, 2);
        X(1, 1) = X(2, 0) = X(3, 0) = X(3, 1) = 1;
        Labels y{Label::OR, Label::CG, Label::CG, Label::OR};
        auto t = train_tree(X, y, all_rows(4), {.max_depth = 2, .n_candidate_features = 2}, rng);
        for (std::size_t i = 0; i < 4; ++i) CHECK(label_from_proba(t.predict(X.row(i))) == y[i]);
    }
    CHECK_THROWS(train_tree(DenseMatrix(0, 1), {}, {}, {}, rng));
    CHECK_THROWS(TreeParams{.max_depth = 0}.validate());
    CHECK_THROWS(TreeParams{.min_samples_split = 1}.validate());
    CHECK(TreeParams{}.candidates_for(100) == 10);
}

TEST_CASE("forests") {
    auto d = testing::gaussian_blobs(300, 5, 1.0, 7);
    auto train = range(0, 200);
    SUBCASE("single tree forest equals its tree") {
        auto f = train_random_forest(d.X, d.y, train, {.n_estimators = 1, .seed = 3});
        for (std::size_t i = 0; i < 300; i += 17) CHECK(f.predict_proba(d.X.row(i)) == f.trees()[0].predict(d.X.row(i)));
    }
    SUBCASE("accuracy and probability range") {
        for (bool extra : {true, false}) {
            ForestParams p{.n_estimators = 50, .seed = 11};
            auto f = extra ? train_extra_trees(d.X, d.y, train, p) : train_random_forest(d.X, d.y, train, p);
            CHECK(f.n_estimators() == 50);
            CHECK(f.bootstrap() == !extra);
            CHECK(held_out_accuracy(f, d, 200) >= 0.95);
            for (std::size_t i = 0; i < 300; ++i) {
                double p1 = f.predict_proba(d.X.row(i));
                CHECK((p1 >= 0.0 && p1 <= 1.0));
                CHECK(std::abs(p1 + (1.0 - p1) - 1.0) <= 1e-9);
            }
            auto reversed = f.trees();
            std::reverse(reversed.begin(), reversed.end());
            ForestModel r(f.kind(), reversed, f.bootstrap(), 0);
            for (std::size_t i = 0; i < 300; i += 13)
                CHECK(r.predict_proba(d.X.row(i)) == doctest::Approx(f.predict_proba(d.X.row(i))).epsilon(1e-12));
            auto back = classifier_from_json(f.to_json());
            CHECK(back->predict_proba(d.X) == f.predict_proba(d.X));
        }
    }
    SUBCASE("determinism") {
        auto a = train_extra_trees(d.X, d.y, train, {.n_estimators = 5, .seed = 2});
        auto b = train_extra_trees(d.X, d.y, train, {.n_estimators = 5, .seed = 2});
        CHECK(a.trees() == b.trees());
    }
}

TEST_CASE("gradient boosting") {
    SUBCASE("balanced labels give a zero initial logit") {
        auto d = testing::gaussian_blobs(40, 2, 1.0, 1);
        auto m = train_gradient_boosting(d.X, d.y, all_rows(40), {.n_estimators = 3});
        CHECK(m.initial_logit() == 0.0);
        CHECK(m.stages().size() == 3);
    }
    SUBCASE("single stage on unsplittable data moves by the mean residual") {
        DenseMatrix X(4, 1, 0.0);
        Labels y{Label::CG, Label::CG, Label::CG, Label::OR};
        auto m = train_gradient_boosting(X, y, all_rows(4), {.n_estimators = 1, .learning_rate = 1.0});
        const double f0 = std::log(3.0);
        CHECK(m.initial_logit() == doctest::Approx(f0));
        // Mean of y - 0.75 is 0.
        CHECK(m.decision(X.row(0)) == doctest::Approx(f0 + 0.0));
    }
    SUBCASE("single stage, lr 1, depth 1 leaves hold the mean residual of their side") {
        DenseMatrix X(4, 1, 0.0);
        X(2, 0) = X(3, 0) = 1.0;
        Labels y{Label::CG, Label::CG, Label::CG, Label::OR};
        auto m = train_gradient_boosting(X, y, all_rows(4), {.n_estimators = 1, .learning_rate = 1.0, .max_depth = 1});
        const double f0 = std::log(3.0);
        CHECK(m.decision(X.row(0)) == doctest::Approx(f0 + 0.25));
        CHECK(m.decision(X.row(3)) == doctest::Approx(f0 + (0.25 - 0.75) / 2.0));
    }
    SUBCASE("training loss is monotone per stage") {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            auto d = testing::random_dataset(150, 4, seed);
            std::vector<double> trace;
            train_gradient_boosting(d.X, d.y, all_rows(150), {.n_estimators = 30, .max_depth = 3}, &trace);
            REQUIRE(trace.size() == 31);
            for (std::size_t i = 1; i < trace.size(); ++i) CHECK(trace[i] <= trace[i - 1] + 1e-12);
        }
    }
    CHECK_THROWS_AS(train_gradient_boosting(DenseMatrix(3, 1), Labels(3, Label::OR), all_rows(3), {}), DataError);
}

TEST_CASE("linear svm") {
    SUBCASE("two separable points") {
        DenseMatrix X(2, 1);
        X(0, 0) = -1;
        X(1, 0) = 1;
        Labels y{Label::OR, Label::CG};
        auto m = train_linear_svm_uncalibrated(X, y, all_rows(2), {.regularization = 1e-3, .epochs = 200});
        CHECK(hinge_loss(m, X, y, all_rows(2)) == doctest::Approx(0.0));
        CHECK(m.decision(X.row(0)) < 0);
        CHECK(m.decision(X.row(1)) > 0);
    }
    SUBCASE("calibrated probabilities and the logistic baseline") {
        auto d = testing::gaussian_blobs(600, 4, 0.5, 3);
        auto train = range(0, 400);
        auto svm = train_linear_svm(d.X, d.y, train, {.seed = 4});
        CHECK_FALSE(svm.calibrator().identity);
        CHECK(svm.calibrator().a > 0.0);
        std::vector<std::pair<double, double>> dp;
        for (std::size_t i = 0; i < 600; ++i) {
            double p = svm.predict_proba(d.X.row(i));
            CHECK((p > 0.0 && p < 1.0));
            dp.emplace_back(svm.decision(d.X.row(i)), p);
        }
        std::sort(dp.begin(), dp.end());
        for (std::size_t i = 1; i < dp.size(); ++i) CHECK(dp[i].second >= dp[i - 1].second);
        auto lr = train_logistic_regression(d.X, d.y, train, {});
        CHECK(std::abs(held_out_accuracy(svm, d, 400) - held_out_accuracy(lr, d, 400)) <= 0.02);
    }
    CHECK_THROWS_AS(train_linear_svm(DenseMatrix(4, 1), Labels(4, Label::CG), all_rows(4), {}), DataError);
}

TEST_CASE("platt calibration") {
    std::vector<double> dec{-2, -1, -0.5, 0.5, 1, 2};
    Labels y{Label::OR, Label::OR, Label::CG, Label::OR, Label::CG, Label::CG};
    auto c = fit_platt(dec, y);
    CHECK_FALSE(c.identity);
    CHECK(c(2.0) > c(-2.0));
    CHECK(fit_platt(dec, Labels(6, Label::CG)).identity);
}

TEST_CASE("logistic regression") {
    SUBCASE("bias only") {
        DenseMatrix X(6, 0);
        Labels y{Label::OR, Label::CG, Label::OR, Label::CG, Label::OR, Label::CG};
        auto m = train_logistic_regression(X, y, all_rows(6), {});
        CHECK(m.predict_proba(X.row(0)) == doctest::Approx(0.5).epsilon(1e-9));
    }
    SUBCASE("stationary at the optimum") {
        auto d = testing::gaussian_blobs(200, 3, 0.4, 5);
        LogisticParams p{.regularization = 1e-2};
        auto m = train_logistic_regression(d.X, d.y, all_rows(200), p);
        std::vector<double> theta = m.weights();
        theta.push_back(m.bias());
        auto g = logistic_gradient(d.X, d.y, all_rows(200), p.regularization, theta);
        double norm = 0;
        for (double v : g) norm += v * v;
        CHECK(std::sqrt(norm) < 1e-6);
    }
    SUBCASE("gradient matches finite differences") {
        auto d = testing::random_dataset(80, 4, 2);
        Rng rng(3);
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<double> theta(5);
            for (auto& t : theta) t = rng.uniform(-1, 1);
            auto rows = all_rows(80);
            auto g = logistic_gradient(d.X, d.y, rows, 0.1, theta);
            auto n = oracle::numeric_gradient(
                [&](const std::vector<double>& t) { return logistic_loss(d.X, d.y, rows, 0.1, t); }, theta, 1e-5);
            for (std::size_t i = 0; i < g.size(); ++i)
                CHECK(std::abs(g[i] - n[i]) <= 1e-5 * std::max(1.0, std::abs(n[i])));
        }
    }
    SUBCASE("sign on standardized 1-d data") {
        DenseMatrix X(6, 1);
        Labels y;
        for (int i = 0; i < 6; ++i) {
            X(i, 0) = (i - 2.5) / 1.7;
            y.push_back(i >= 3 ? Label::CG : Label::OR);
        }
        CHECK(train_logistic_regression(X, y, all_rows(6), {}).weights()[0] > 0.0);
        for (auto& l : y) l = is_cg(l) ? Label::OR : Label::CG;
        CHECK(train_logistic_regression(X, y, all_rows(6), {}).weights()[0] < 0.0);
    }
}

TEST_CASE("stacking") {
    auto d = testing::gaussian_blobs(240, 4, 0.6, 9);
    auto cfg = EnsembleConfig::desk();
    cfg.extra_trees.n_estimators = cfg.random_forest.n_estimators = 10;
    cfg.boosting.n_estimators = 10;
    auto train = range(0, 160);
    auto fit = train_stacking(d.X, d.y, train, cfg, 21);
    REQUIRE(fit.oof.rows() == 160);
    REQUIRE(fit.oof.cols() == 4);
    for (double v : fit.oof.data()) CHECK((v >= 0.0 && v <= 1.0));
    CHECK(fit.model.base_names() ==
          std::vector<std::string>{"extra_trees", "random_forest", "gradient_boosting", "linear_svm"});
    CHECK(fit.model.meta().weights().size() == 4);

    auto probs = fit.model.predict_proba(d.X);
    for (std::size_t i = 0; i < 240; ++i) CHECK(probs[i] == fit.model.predict_proba(d.X.row(i)));
    auto labels = fit.model.predict(d.X);
    for (std::size_t i = 0; i < 240; ++i) CHECK(labels[i] == label_from_proba(probs[i]));

    auto back = classifier_from_json(fit.model.to_json());
    CHECK(back->predict_proba(d.X) == probs);

    auto again = train_stacking(d.X, d.y, train, cfg, 21);
    CHECK(again.model.predict_proba(d.X) == probs);
}

TEST_CASE("stacking over agreeing bases preserves their ranking") {
    auto d = testing::gaussian_blobs(120, 2, 0.5, 4);
    LearnerFactory lr = [](const DenseMatrix& X, const Labels& y, std::span<const std::size_t> rows, std::uint64_t) {
        return std::make_unique<LinearModel>(train_logistic_regression(X, y, rows, {}));
    };
    std::vector<BaseLearner> bases{{"a", lr}, {"b", lr}, {"c", lr}, {"d", lr}};
    auto fit = train_stacking(d.X, d.y, all_rows(120), bases, {}, 5, 3);
    auto stacked = fit.model.predict_proba(d.X);
    auto single = fit.model.bases()[0]->predict_proba(d.X);
    std::vector<std::size_t> a = all_rows(120), b = all_rows(120);
    std::sort(a.begin(), a.end(), [&](auto i, auto j) { return stacked[i] < stacked[j]; });
    std::sort(b.begin(), b.end(), [&](auto i, auto j) { return single[i] < single[j]; });
    CHECK(a == b);
}
