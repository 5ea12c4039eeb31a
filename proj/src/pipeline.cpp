// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revhawk Contributors

#include "revhawk/pipeline.hpp"

#include <fstream>
#include <sstream>

namespace revhawk::pipeline {

std::string_view profile_name(Profile p) noexcept { return p == Profile::paper ? "paper" : "desk"; }

std::string_view stage_order_name(StageOrder s) noexcept {
    return s == StageOrder::paper_compat ? "paper_compat" : "standard";
}

Profile parse_profile(std::string_view s) {
    if (s == "desk") return Profile::desk;
    if (s == "paper") return Profile::paper;
    throw ConfigError("profile must be desk or paper, got '" + std::string(s) + "'");
}

StageOrder parse_stage_order(std::string_view s) {
    if (s == "standard") return StageOrder::standard;
    if (s == "paper_compat") return StageOrder::paper_compat;
    throw ConfigError("stage_order must be standard or paper_compat, got '" + std::string(s) + "'");
}

PipelineConfig PipelineConfig::for_profile(Profile p) {
    PipelineConfig c;
    c.profile = p;
    if (p == Profile::paper) {
        c.et_estimators = 500;
        c.rf_estimators = 400;
        c.gb_estimators = 500;
        c.hho_hawks = 30;
        c.hho_iterations = 50;
        c.knn_max_rows = 4000;
    } else {
        c.hho_hawks = 10;
        c.hho_iterations = 15;
        c.knn_max_rows = 1200;
    }
    return c;
}

namespace {

struct Field {
    std::function<void(PipelineConfig&, const json&)> set;
    std::function<json(const PipelineConfig&)> get;
};

template <class T>
Field field(T PipelineConfig::*m) {
    return {[m](PipelineConfig& c, const json& j) {
                if constexpr (std::is_same_v<T, bool>) {
                    if (!j.is_boolean()) throw ConfigError("expected a boolean");
                } else if constexpr (std::is_same_v<T, std::string>) {
                    if (!j.is_string()) throw ConfigError("expected a string");
                } else if constexpr (std::is_floating_point_v<T>) {
                    if (!j.is_number()) throw ConfigError("expected a number");
                } else if constexpr (std::is_unsigned_v<T>) {
                    if (!j.is_number_unsigned()) throw ConfigError("expected a non-negative integer");
                } else {
                    if (!j.is_number_integer()) throw ConfigError("expected an integer");
                }
                c.*m = j.get<T>();
            },
            [m](const PipelineConfig& c) { return json(c.*m); }};
}

// Key order here is the order of the config snapshot in every report.
const std::vector<std::pair<std::string, Field>>& fields() {
    static const std::vector<std::pair<std::string, Field>> table = [] {
        std::vector<std::pair<std::string, Field>> t{
            {"dataset", field(&PipelineConfig::dataset)},
            {"resources", field(&PipelineConfig::resources)},
            {"output_dir", field(&PipelineConfig::output_dir)},
            {"text_column", field(&PipelineConfig::text_column)},
            {"label_column", field(&PipelineConfig::label_column)},
            {"sample_rows", field(&PipelineConfig::sample_rows)},
            {"expand_contractions", field(&PipelineConfig::expand_contractions)},
            {"lowercase", field(&PipelineConfig::lowercase)},
            {"preserve_emotive_punct", field(&PipelineConfig::preserve_emotive_punct)},
            {"lemmatize", field(&PipelineConfig::lemmatize)},
            {"remove_stopwords", field(&PipelineConfig::remove_stopwords)},
            {"word_max", field(&PipelineConfig::word_max)},
            {"char_max", field(&PipelineConfig::char_max)},
            {"count_max", field(&PipelineConfig::count_max)},
            {"word_ngram_min", field(&PipelineConfig::word_ngram_min)},
            {"word_ngram_max", field(&PipelineConfig::word_ngram_max)},
            {"char_ngram_min", field(&PipelineConfig::char_ngram_min)},
            {"char_ngram_max", field(&PipelineConfig::char_ngram_max)},
            {"count_ngram_min", field(&PipelineConfig::count_ngram_min)},
            {"count_ngram_max", field(&PipelineConfig::count_ngram_max)},
            {"hho_hawks", field(&PipelineConfig::hho_hawks)},
            {"hho_iterations", field(&PipelineConfig::hho_iterations)},
            {"hho_levy_beta", field(&PipelineConfig::hho_levy_beta)},
            {"fitness_alpha", field(&PipelineConfig::fitness_alpha)},
            {"knn_k", field(&PipelineConfig::knn_k)},
            {"knn_holdout", field(&PipelineConfig::knn_holdout)},
            {"knn_max_rows", field(&PipelineConfig::knn_max_rows)},
            {"smote_k", field(&PipelineConfig::smote_k)},
            {"enn_k", field(&PipelineConfig::enn_k)},
            {"target_ratio", field(&PipelineConfig::target_ratio)},
            {"et_estimators", field(&PipelineConfig::et_estimators)},
            {"rf_estimators", field(&PipelineConfig::rf_estimators)},
            {"gb_estimators", field(&PipelineConfig::gb_estimators)},
            {"gb_learning_rate", field(&PipelineConfig::gb_learning_rate)},
            {"gb_max_depth", field(&PipelineConfig::gb_max_depth)},
            {"svm_epochs", field(&PipelineConfig::svm_epochs)},
            {"svm_lambda", field(&PipelineConfig::svm_lambda)},
            {"stack_folds", field(&PipelineConfig::stack_folds)},
            {"test_fraction", field(&PipelineConfig::test_fraction)},
            {"seed", field(&PipelineConfig::seed)},
            {"cv_folds", field(&PipelineConfig::cv_folds)},
        };
        t.push_back({"profile",
                     {[](PipelineConfig& c, const json& j) {
                          if (!j.is_string()) throw ConfigError("expected a string");
                          c.profile = parse_profile(j.get<std::string>());
                      },
                      [](const PipelineConfig& c) { return json(std::string(profile_name(c.profile))); }}});
        t.push_back({"stage_order",
                     {[](PipelineConfig& c, const json& j) {
                          if (!j.is_string()) throw ConfigError("expected a string");
                          c.stage_order = parse_stage_order(j.get<std::string>());
                      },
                      [](const PipelineConfig& c) { return json(std::string(stage_order_name(c.stage_order))); }}});
        return t;
    }();
    return table;
}

const Field* find_field(const std::string& key) {
    for (const auto& [k, f] : fields())
        if (k == key) return &f;
    return nullptr;
}

}  // namespace

PipelineConfig PipelineConfig::from_json(const json& doc, Profile fallback) {
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");
    Profile p = fallback;
    if (auto it = doc.find("profile"); it != doc.end()) {
        if (!it->is_string()) throw ConfigError("config key 'profile': expected a string");
        p = parse_profile(it->get<std::string>());
    }
    PipelineConfig c = for_profile(p);
    for (const auto& [key, value] : doc.items()) {
        const Field* f = find_field(key);
        if (!f) throw ConfigError("unknown config key '" + key + "'");
        try {
            f->set(c, value);
        } catch (const ConfigError& e) {
            throw ConfigError("config key '" + key + "': " + e.what());
        } catch (const json::exception& e) {
            throw ConfigError("config key '" + key + "': " + e.what());
        }
    }
    c.validate();
    return c;
}

PipelineConfig PipelineConfig::load(const std::filesystem::path& path, Profile fallback) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
    }
    return from_json(doc, fallback);
}

json PipelineConfig::to_json() const {
    json j = json::object();
    for (const auto& [k, f] : fields()) j[k] = f.get(*this);
    return j;
}

void PipelineConfig::validate() const {
    auto check = [](bool ok, const std::string& msg) {
        if (!ok) throw ConfigError(msg);
    };
    check(word_ngram_min >= 1 && word_ngram_min <= word_ngram_max, "word n-gram range is invalid");
    check(char_ngram_min >= 1 && char_ngram_min <= char_ngram_max, "char n-gram range is invalid");
    check(count_ngram_min >= 1 && count_ngram_min <= count_ngram_max, "count n-gram range is invalid");
    check(test_fraction > 0.0 && test_fraction < 1.0, "test_fraction must lie in (0, 1)");
    check(cv_folds == 0 || cv_folds >= 2, "cv_folds must be 0 or >= 2");
    try {
        preprocess_config().validate();
        hho_params().validate(1);
        fitness_params().validate();
        resample_params().validate();
        ensemble().validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    check(knn_k >= 1, "knn_k must be >= 1");
    check(knn_holdout > 0.0 && knn_holdout < 1.0, "knn_holdout must lie in (0, 1)");
    check(knn_max_rows >= 10, "knn_max_rows must be >= 10");
}

preprocess::PreprocessConfig PipelineConfig::preprocess_config() const {
    preprocess::PreprocessConfig p;
    p.expand_contractions = expand_contractions;
    p.lowercase = lowercase;
    p.preserve_emotive_punct = preserve_emotive_punct;
    p.lemmatize = lemmatize;
    p.remove_stopwords = remove_stopwords;
    return p;
}

features::FeatureCaps PipelineConfig::caps() const {
    features::FeatureCaps c;
    c.word_max = word_max;
    c.char_max = char_max;
    c.count_max = count_max;
    c.word_range = {word_ngram_min, word_ngram_max};
    c.char_range = {char_ngram_min, char_ngram_max};
    c.count_range = {count_ngram_min, count_ngram_max};
    return c;
}

hho::HHOParams PipelineConfig::hho_params() const {
    hho::HHOParams p;
    p.n_hawks = hho_hawks;
    p.n_iterations = hho_iterations;
    p.levy_beta = hho_levy_beta;
    p.seed = stage_seed(seed, "hho");
    return p;
}

hho::FitnessParams PipelineConfig::fitness_params() const { return {fitness_alpha}; }

hho::KnnEvaluatorParams PipelineConfig::knn_params() const { return {knn_k, knn_holdout, knn_max_rows}; }

resample::ResampleParams PipelineConfig::resample_params() const {
    return {smote_k, enn_k, target_ratio, stage_seed(seed, "resample")};
}

learners::EnsembleConfig PipelineConfig::ensemble() const {
    auto e = learners::EnsembleConfig::desk();
    e.extra_trees.n_estimators = et_estimators;
    e.random_forest.n_estimators = rf_estimators;
    e.boosting.n_estimators = gb_estimators;
    e.boosting.learning_rate = gb_learning_rate;
    e.boosting.max_depth = gb_max_depth;
    e.svm.epochs = svm_epochs;
    e.svm.regularization = svm_lambda;
    e.folds = stack_folds;
    return e;
}

corpus::ColumnSchema PipelineConfig::schema() const {
    corpus::ColumnSchema s;
    s.text = text_column;
    s.label = label_column;
    return s;
}

std::uint64_t stage_seed(std::uint64_t root, std::string_view stage) { return derive_seed(root, stage); }

TextResources TextResources::load(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) throw DataError("resource directory " + dir.string() + " not found");
    return {preprocess::Resources::load(dir), features::LinguisticLexicons::load(dir)};
}

namespace {

template <class F>
auto run_stage(const std::string& name, F&& f) {
    try {
        return f();
    } catch (const StageError&) {
        throw;
    } catch (const ConfigError& e) {
        throw StageError(name, e.what(), 2);
    } catch (const DataError& e) {
        throw StageError(name, e.what(), 3);
    } catch (const std::exception& e) {
        throw StageError(name, e.what(), 4);
    }
}

class StageRecorder {
public:
    StageRecorder(std::vector<StageLog>& out, const Logger& log) : out_(out), log_(log) {}
    void operator()(const std::string& stage, std::size_t rows, std::size_t cols) {
        out_.push_back({stage, rows, cols});
        if (log_) log_(stage + ": rows=" + std::to_string(rows) + " cols=" + std::to_string(cols));
    }

private:
    std::vector<StageLog>& out_;
    const Logger& log_;
};

std::string hash_of(const DenseMatrix& X, const Labels& y) {
    Fingerprint f;
    f.add(static_cast<std::uint64_t>(X.rows()));
    f.add(static_cast<std::uint64_t>(X.cols()));
    f.add_bytes(X.data().data(), X.data().size() * sizeof(double));
    for (auto l : y) f.add(static_cast<std::uint64_t>(is_cg(l)));
    return f.hex();
}

std::string hash_of(const hho::FeatureMask& mask) {
    Fingerprint f;
    f.add(static_cast<std::uint64_t>(mask.size()));
    f.add_bytes(mask.bits().data(), mask.bits().size());
    return f.hex();
}

std::string hash_of(const json& doc) {
    Fingerprint f;
    f.add(doc.dump());
    return f.hex();
}

std::vector<std::string> texts_of(const corpus::Corpus& corpus, std::span<const std::size_t> rows) {
    std::vector<std::string> out;
    out.reserve(rows.size());
    for (auto r : rows) out.push_back(corpus[r].text);
    return out;
}

Labels labels_of(const corpus::Corpus& corpus, std::span<const std::size_t> rows) {
    Labels out;
    out.reserve(rows.size());
    for (auto r : rows) out.push_back(corpus[r].label);
    return out;
}

// Scores held-out rows with the stacker and each of its base models.
void score(TrainOutcome& out, const DenseMatrix& X, const Labels& y) {
    const auto& model = out.fitted.model;
    out.test_scores = model.predict_proba(X);
    out.test_labels = y;
    Labels pred;
    for (double p : out.test_scores) pred.push_back(learners::label_from_proba(p));
    out.confusion = eval::confusion(y, pred);
    out.test_metrics = eval::evaluate(y, out.test_scores);
    const ClassCounts c = count_classes(y);
    if (c.generated > 0 && c.original > 0) out.roc = eval::roc_curve(y, out.test_scores);
    for (std::size_t b = 0; b < model.bases().size(); ++b)
        out.base_metrics[model.base_names()[b]] = eval::evaluate(y, model.bases()[b]->predict_proba(X));
}

}  // namespace

std::vector<double> FittedModel::predict(const std::vector<std::string>& texts, const PipelineConfig& config,
                                         const TextResources& res) const {
    if (texts.empty()) return {};
    const auto docs = preprocess::preprocess_all(texts, config.preprocess_config(), res.preprocess);
    const auto X = features::transform(space, docs, texts, res.lexicons);
    const auto cols = mask.selected_columns();
    return model.predict_proba(X.densify(cols));
}

json StateFingerprints::to_json() const {
    return {{"features", features}, {"mask", mask}, {"resampled", resampled}, {"models", models}};
}

TrainOutcome fit_and_score(const corpus::Corpus& corpus, std::span<const std::size_t> train_rows,
                           std::span<const std::size_t> eval_rows, const PipelineConfig& config,
                           const TextResources& res, std::uint64_t seed, const Logger& log) {
    PipelineConfig cfg = config;
    cfg.seed = seed;
    TrainOutcome out;
    StageRecorder record(out.stages, log);
    const auto train_texts = texts_of(corpus, train_rows);
    const auto eval_texts = texts_of(corpus, eval_rows);
    const Labels train_y = labels_of(corpus, train_rows);
    const Labels eval_y = labels_of(corpus, eval_rows);

    auto [train_docs, eval_docs] = run_stage("preprocess", [&] {
        const auto pc = cfg.preprocess_config();
        return std::pair{preprocess::preprocess_all(train_texts, pc, res.preprocess),
                         preprocess::preprocess_all(eval_texts, pc, res.preprocess)};
    });
    record("preprocess", train_docs.size() + eval_docs.size(), 0);

    auto [Xtr, Xev] = run_stage("features", [&] {
        const auto ling_tr = features::compute_linguistic(train_texts, res.lexicons);
        out.fitted.space = features::fit_feature_space(train_docs, ling_tr, cfg.caps());
        return std::pair{features::transform(out.fitted.space, train_docs, ling_tr),
                         features::transform(out.fitted.space, eval_docs, eval_texts, res.lexicons)};
    });
    out.total_dim = out.fitted.space.total_dim;
    record("features", Xtr.rows(), Xtr.cols());

    run_stage("select", [&] {
        auto sel = hho::select_features(Xtr, train_y, cfg.hho_params(), cfg.fitness_params(), cfg.knn_params());
        out.fitted.mask = std::move(sel.mask);
        out.convergence = std::move(sel.history);
    });
    out.selected_dim = out.fitted.mask.selected_count();
    record("select", Xtr.rows(), out.selected_dim);

    const auto cols = out.fitted.mask.selected_columns();
    auto rs = run_stage("resample", [&] { return resample::smoteenn(Xtr.densify(cols), train_y, cfg.resample_params()); });
    out.resample_report = rs.report;
    record("resample", rs.X.rows(), rs.X.cols());

    run_stage("learners", [&] {
        auto fit = learners::train_stacking(rs.X, rs.y, learners::all_rows(rs.X.rows()), cfg.ensemble(),
                                            stage_seed(seed, "learners"));
        out.fitted.model = std::move(fit.model);
    });
    record("learners", rs.X.rows(), rs.X.cols());

    run_stage("evaluate", [&] {
        if (eval_rows.empty()) return;
        score(out, Xev.densify(cols), eval_y);
    });
    record("evaluate", eval_rows.size(), cols.size());

    out.test_rows.assign(eval_rows.begin(), eval_rows.end());
    out.fingerprints = {out.fitted.space.fingerprint(), hash_of(out.fitted.mask), hash_of(rs.X, rs.y),
                        hash_of(out.fitted.model.to_json())};
    return out;
}

namespace {

// Compatibility ordering: every fitted stage sees the full corpus and
// the split happens after resampling. Test rows index the resampled set.
TrainOutcome train_paper_compat(const corpus::Corpus& corpus, const PipelineConfig& cfg, const TextResources& res,
                                const Logger& log) {
    TrainOutcome out;
    StageRecorder record(out.stages, log);
    const auto texts = corpus.texts();
    const Labels y = corpus.labels();
    auto docs = run_stage("preprocess",
                          [&] { return preprocess::preprocess_all(texts, cfg.preprocess_config(), res.preprocess); });
    record("preprocess", docs.size(), 0);
    auto X = run_stage("features", [&] {
        const auto ling = features::compute_linguistic(texts, res.lexicons);
        out.fitted.space = features::fit_feature_space(docs, ling, cfg.caps());
        return features::transform(out.fitted.space, docs, ling);
    });
    out.total_dim = out.fitted.space.total_dim;
    record("features", X.rows(), X.cols());
    run_stage("select", [&] {
        auto sel = hho::select_features(X, y, cfg.hho_params(), cfg.fitness_params(), cfg.knn_params());
        out.fitted.mask = std::move(sel.mask);
        out.convergence = std::move(sel.history);
    });
    out.selected_dim = out.fitted.mask.selected_count();
    record("select", X.rows(), out.selected_dim);
    const auto cols = out.fitted.mask.selected_columns();
    auto rs = run_stage("resample", [&] { return resample::smoteenn(X.densify(cols), y, cfg.resample_params()); });
    out.resample_report = rs.report;
    record("resample", rs.X.rows(), rs.X.cols());

    const auto split = run_stage("split", [&] {
        return corpus::stratified_split(rs.y, cfg.test_fraction, stage_seed(cfg.seed, "split"));
    });
    record("split", split.train.size(), split.test.size());
    run_stage("learners", [&] {
        auto fit = learners::train_stacking(rs.X, rs.y, split.train, cfg.ensemble(), stage_seed(cfg.seed, "learners"));
        out.fitted.model = std::move(fit.model);
    });
    record("learners", split.train.size(), rs.X.cols());
    Labels test_y;
    for (auto i : split.test) test_y.push_back(rs.y[i]);
    run_stage("evaluate", [&] { score(out, rs.X.select_rows(split.test), test_y); });
    record("evaluate", split.test.size(), rs.X.cols());
    out.test_rows = split.test;
    out.fingerprints = {out.fitted.space.fingerprint(), hash_of(out.fitted.mask), hash_of(rs.X, rs.y),
                        hash_of(out.fitted.model.to_json())};
    return out;
}

}  // namespace

corpus::Corpus sample_corpus(const corpus::Corpus& corpus, std::size_t n, std::uint64_t seed) {
    if (n == 0 || n >= corpus.size()) return corpus;
    const double frac = static_cast<double>(n) / static_cast<double>(corpus.size());
    const auto split = corpus::stratified_split(corpus.labels(), frac, derive_seed(seed, "sample"));
    return corpus.subset(split.test);
}

TrainOutcome train(const corpus::Corpus& corpus, const PipelineConfig& config, const TextResources& res,
                   const Logger& log) {
    config.validate();
    const ClassCounts c = corpus.class_counts();
    if (c.generated < 2 || c.original < 2)
        throw StageError("split", "training needs at least two rows of each class", 3);

    TrainOutcome out;
    if (config.stage_order == StageOrder::paper_compat) {
        out = train_paper_compat(corpus, config, res, log);
    } else {
        const auto split = run_stage("split", [&] {
            return corpus::stratified_split(corpus.labels(), config.test_fraction, stage_seed(config.seed, "split"));
        });
        if (log) log("split: train=" + std::to_string(split.train.size()) + " test=" + std::to_string(split.test.size()));
        out = fit_and_score(corpus, split.train, split.test, config, res, config.seed, log);
        out.stages.insert(out.stages.begin(), StageLog{"split", split.train.size(), split.test.size()});
    }

    if (config.cv_folds > 0) {
        out.cv = eval::cross_validate(corpus.labels(), config.cv_folds, config.seed,
                                      [&](const corpus::Fold& fold, std::size_t i) {
                                          if (log) log("cv fold " + std::to_string(i + 1));
                                          return fit_and_score(corpus, fold.train, fold.validation, config, res,
                                                               derive_seed(config.seed, "cv-fold", {i}), {})
                                              .test_metrics;
                                      });
    }
    return out;
}

json TrainOutcome::report(const PipelineConfig& config) const {
    json stages_json = json::array();
    for (const auto& s : stages) stages_json.push_back({{"stage", s.stage}, {"rows", s.rows}, {"cols", s.cols}});
    json bases = json::object();
    for (const auto& [name, m] : base_metrics) bases[name] = m.to_json();
    const double reduction =
        total_dim == 0 ? 0.0 : 1.0 - static_cast<double>(selected_dim) / static_cast<double>(total_dim);
    json j{{"config", config.to_json()},
           {"seed", config.seed},
           {"profile", profile_name(config.profile)},
           {"stage_order", stage_order_name(config.stage_order)},
           {"dimensions", {{"total", total_dim}, {"selected", selected_dim}, {"reduction", reduction}}},
           {"confusion", confusion.to_json()},
           {"test", test_metrics.to_json()},
           {"base_models", bases},
           {"resample", json::parse(resample_report.to_json())},
           {"fingerprints", fingerprints.to_json()},
           {"stages", stages_json}};
    if (config.stage_order == StageOrder::paper_compat)
        j["note"] = "paper_compat: resampling precedes the train/test split, so test rows may be synthetic";
    if (cv) j["cv"] = cv->to_json();
    return j;
}

}  // namespace revhawk::pipeline
