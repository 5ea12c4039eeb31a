// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revhawk Contributors

#include "revhawk/learners/linear.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "revhawk/corpus.hpp"

namespace revhawk::learners {

namespace {

double sigmoid(double z) noexcept {
    if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

// log(1 + e^z) without overflow.
double softplus(double z) noexcept { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double dot(std::span<const double> a, std::span<const double> b) noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void require_both_classes(const Labels& y, std::span<const std::size_t> rows, const char* what) {
    ClassCounts c;
    for (auto r : rows) (is_cg(y.at(r)) ? c.generated : c.original)++;
    if (c.generated == 0 || c.original == 0) throw DataError(std::string(what) + " needs both classes");
}

constexpr double kMinSlope = 1e-6;

}  // namespace

double PlattCalibrator::operator()(double decision) const noexcept { return sigmoid(a * decision + b); }

PlattCalibrator fit_platt(std::span<const double> decisions, const Labels& y) {
    if (decisions.size() != y.size()) throw std::invalid_argument("decisions and labels are not aligned");
    const ClassCounts c = count_classes(y);
    if (c.generated == 0 || c.original == 0) return {};
    const double hi = (static_cast<double>(c.generated) + 1.0) / (static_cast<double>(c.generated) + 2.0);
    const double lo = 1.0 / (static_cast<double>(c.original) + 2.0);
    std::vector<double> t(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) t[i] = is_cg(y[i]) ? hi : lo;

    auto objective = [&](double a, double b) {
        double f = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            const double z = a * decisions[i] + b;
            f += softplus(z) - t[i] * z;
        }
        return f;
    };

    double a = 0.0;
    double b = std::log((static_cast<double>(c.generated) + 1.0) / (static_cast<double>(c.original) + 1.0));
    double f = objective(a, b);
    for (int iter = 0; iter < 100; ++iter) {
        double ga = 0, gb = 0, haa = 1e-12, hab = 0, hbb = 1e-12;
        for (std::size_t i = 0; i < t.size(); ++i) {
            const double d = decisions[i];
            const double p = sigmoid(a * d + b);
            const double w = p * (1.0 - p);
            ga += (p - t[i]) * d;
            gb += p - t[i];
            haa += w * d * d;
            hab += w * d;
            hbb += w;
        }
        if (std::abs(ga) < 1e-10 && std::abs(gb) < 1e-10) break;
        const double det = haa * hbb - hab * hab;
        const double da = -(hbb * ga - hab * gb) / det;
        const double db = -(-hab * ga + haa * gb) / det;
        const double slope = ga * da + gb * db;
        double step = 1.0;
        bool moved = false;
        while (step >= 1e-10) {
            const double fn = objective(a + step * da, b + step * db);
            if (fn < f + 1e-4 * step * slope) {
                a += step * da;
                b += step * db;
                f = fn;
                moved = true;
                break;
            }
            step /= 2.0;
        }
        if (!moved) break;
    }
    return {std::max(a, kMinSlope), b, false};
}

double LinearModel::decision(std::span<const double> row) const {
    if (row.size() != weights_.size()) throw std::invalid_argument("row width does not match the linear model");
    return dot(weights_, row) + bias_;
}

double LinearModel::predict_proba(std::span<const double> row) const { return calibrator_(decision(row)); }

json LinearModel::to_json() const {
    return {{"kind", kind_},
            {"weights", weights_},
            {"bias", bias_},
            {"calibrator", {{"a", calibrator_.a}, {"b", calibrator_.b}, {"identity", calibrator_.identity}}}};
}

LinearModel LinearModel::from_json(const json& doc) {
    const auto& c = doc.at("calibrator");
    PlattCalibrator cal{c.at("a").get<double>(), c.at("b").get<double>(), c.at("identity").get<bool>()};
    return LinearModel(doc.at("kind").get<std::string>(), doc.at("weights").get<std::vector<double>>(),
                       doc.at("bias").get<double>(), cal);
}

void SvmParams::validate() const {
    if (!(regularization > 0.0)) throw std::invalid_argument("svm regularization must be positive");
    if (epochs < 1) throw std::invalid_argument("svm needs at least one epoch");
    if (!(calibration_fraction > 0.0 && calibration_fraction < 1.0))
        throw std::invalid_argument("calibration_fraction must lie in (0, 1)");
}

namespace {

LinearModel pegasos(const DenseMatrix& X, const Labels& y, std::span<const std::size_t> rows,
                    const SvmParams& p) {
    const std::size_t d = X.cols();
    const double lambda = p.regularization;
    const double radius = 1.0 / std::sqrt(lambda);
    std::vector<double> w(d, 0.0), avg(d, 0.0);
    double wb = 0.0, avg_b = 0.0;
    std::vector<std::size_t> order(rows.begin(), rows.end());
    Rng rng(derive_seed(p.seed, "svm-epoch"));
    std::size_t t = 0;
    for (std::size_t epoch = 0; epoch < p.epochs; ++epoch) {
        rng.shuffle(order);
        const bool last = epoch + 1 == p.epochs;
        for (std::size_t r : order) {
            ++t;
            const double eta = 1.0 / (lambda * static_cast<double>(t));
            auto x = X.row(r);
            const double s = is_cg(y[r]) ? 1.0 : -1.0;
            const double margin = s * (dot(w, x) + wb);
            const double shrink = 1.0 - eta * lambda;
            for (auto& v : w) v *= shrink;
            wb *= shrink;
            if (margin < 1.0) {
                for (std::size_t j = 0; j < d; ++j) w[j] += eta * s * x[j];
                wb += eta * s;
            }
            const double norm = std::sqrt(dot(w, w) + wb * wb);
            if (norm > radius) {
                const double k = radius / norm;
                for (auto& v : w) v *= k;
                wb *= k;
            }
            if (last) {
                for (std::size_t j = 0; j < d; ++j) avg[j] += w[j];
                avg_b += wb;
            }
        }
    }
    const auto m = static_cast<double>(order.size());
    for (auto& v : avg) v /= m;
    return LinearModel("linear_svm", std::move(avg), avg_b / m, PlattCalibrator{});
}

}  // namespace

LinearModel train_linear_svm_uncalibrated(const DenseMatrix& X, const Labels& y, std::span<const std::size_t> rows,
                                          const SvmParams& params) {
    params.validate();
    if (rows.empty()) throw std::invalid_argument("cannot train an svm on zero rows");
    require_both_classes(y, rows, "linear svm");
    return pegasos(X, y, rows, params);
}

LinearModel train_linear_svm(const DenseMatrix& X, const Labels& y, std::span<const std::size_t> rows,
                             const SvmParams& params) {
    params.validate();
    if (rows.empty()) throw std::invalid_argument("cannot train an svm on zero rows");
    require_both_classes(y, rows, "linear svm");

    Labels local;
    local.reserve(rows.size());
    for (auto r : rows) local.push_back(y[r]);
    const auto split = corpus::stratified_split(local, params.calibration_fraction,
                                                derive_seed(params.seed, "svm-calibration"));
    std::vector<std::size_t> fit_rows, cal_rows;
    for (auto i : split.train) fit_rows.push_back(rows[i]);
    for (auto i : split.test) cal_rows.push_back(rows[i]);

    Labels fit_y, cal_y;
    for (auto r : fit_rows) fit_y.push_back(y[r]);
    for (auto r : cal_rows) cal_y.push_back(y[r]);
    const ClassCounts fc = count_classes(fit_y), cc = count_classes(cal_y);
    // Too few rows to hold any out: train on everything, leave probabilities uncalibrated.
    if (fc.generated == 0 || fc.original == 0 || cc.generated == 0 || cc.original == 0)
        return pegasos(X, y, rows, params);

    LinearModel raw = pegasos(X, y, fit_rows, params);
    std::vector<double> dec;
    dec.reserve(cal_rows.size());
    for (auto r : cal_rows) dec.push_back(raw.decision(X.row(r)));
    return LinearModel("linear_svm", raw.weights(), raw.bias(), fit_platt(dec, cal_y));
}

double hinge_loss(const LinearModel& model, const DenseMatrix& X, const Labels& y,
                  std::span<const std::size_t> rows) {
    if (rows.empty()) return 0.0;
    double sum = 0.0;
    for (auto r : rows) {
        const double s = is_cg(y[r]) ? 1.0 : -1.0;
        sum += std::max(0.0, 1.0 - s * model.decision(X.row(r)));
    }
    return sum / static_cast<double>(rows.size());
}

void LogisticParams::validate() const {
    if (regularization < 0.0) throw std::invalid_argument("logistic regularization must be non-negative");
    if (max_iterations < 1) throw std::invalid_argument("logistic regression needs at least one iteration");
    if (!(tolerance > 0.0)) throw std::invalid_argument("logistic tolerance must be positive");
}

double logistic_loss(const DenseMatrix& X, const Labels& y, std::span<const std::size_t> rows, double lambda,
                     std::span<const double> theta) {
    const std::size_t d = X.cols();
    if (theta.size() != d + 1) throw std::invalid_argument("theta must hold one weight per column plus a bias");
    const auto w = theta.first(d);
    double sum = 0.0;
    for (auto r : rows) {
        const double z = dot(w, X.row(r)) + theta[d];
        sum += softplus(z) - as_target(y[r]) * z;
    }
    const double n = rows.empty() ? 1.0 : static_cast<double>(rows.size());
    return sum / n + 0.5 * lambda * dot(w, w);
}

std::vector<double> logistic_gradient(const DenseMatrix& X, const Labels& y, std::span<const std::size_t> rows,
                                      double lambda, std::span<const double> theta) {
    const std::size_t d = X.cols();
    if (theta.size() != d + 1) throw std::invalid_argument("theta must hold one weight per column plus a bias");
    const auto w = theta.first(d);
    std::vector<double> g(d + 1, 0.0);
    for (auto r : rows) {
        auto x = X.row(r);
        const double e = sigmoid(dot(w, x) + theta[d]) - as_target(y[r]);
        for (std::size_t j = 0; j < d; ++j) g[j] += e * x[j];
        g[d] += e;
    }
    const double n = rows.empty() ? 1.0 : static_cast<double>(rows.size());
    for (auto& v : g) v /= n;
    for (std::size_t j = 0; j < d; ++j) g[j] += lambda * w[j];
    return g;
}

LinearModel train_logistic_regression(const DenseMatrix& X, const Labels& y, std::span<const std::size_t> rows,
                                      const LogisticParams& params) {
    params.validate();
    if (rows.empty()) throw std::invalid_argument("cannot train logistic regression on zero rows");
    const std::size_t d = X.cols();
    const double lambda = params.regularization;
    std::vector<double> theta(d + 1, 0.0), next(d + 1), prev_theta, prev_g;
    double f = logistic_loss(X, y, rows, lambda, theta);
    std::vector<double> g = logistic_gradient(X, y, rows, lambda, theta);
    double step = 1.0;
    for (std::size_t iter = 0; iter < params.max_iterations; ++iter) {
        const double gg = std::inner_product(g.begin(), g.end(), g.begin(), 0.0);
        if (std::sqrt(gg) < params.tolerance) break;
        if (!prev_g.empty()) {
            double ss = 0, sy = 0;
            for (std::size_t j = 0; j <= d; ++j) {
                const double s = theta[j] - prev_theta[j];
                ss += s * s;
                sy += s * (g[j] - prev_g[j]);
            }
            if (sy > 0) step = ss / sy;
        }
        double fn = f;
        bool moved = false;
        for (int halvings = 0; halvings < 60; ++halvings, step /= 2.0) {
            for (std::size_t j = 0; j <= d; ++j) next[j] = theta[j] - step * g[j];
            fn = logistic_loss(X, y, rows, lambda, next);
            if (fn <= f - 1e-4 * step * gg) {
                moved = true;
                break;
            }
        }
        if (!moved) break;
        prev_theta = theta;
        prev_g = g;
        theta = next;
        f = fn;
        g = logistic_gradient(X, y, rows, lambda, theta);
    }
    const double bias = theta[d];
    theta.pop_back();
    return LinearModel("logistic_regression", std::move(theta), bias, PlattCalibrator{});
}

}  // namespace revhawk::learners
