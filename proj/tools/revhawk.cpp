// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revhawk Contributors

// revhawk: train, apply and inspect the CG/OR review detector.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "revhawk/bundle.hpp"
#include "revhawk/csv.hpp"
#include "revhawk/pipeline.hpp"

#ifndef REVHAWK_RESOURCE_DIR
#define REVHAWK_RESOURCE_DIR "resources"
#endif

namespace fs = std::filesystem;
using namespace revhawk;
using pipeline::PipelineConfig;
using json = nlohmann::json;

namespace {

enum Exit { kOk = 0, kConfig = 2, kData = 3, kRuntime = 4 };

struct CommonFlags {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string profile;
    std::string stage_order;
    std::string out;
    std::string dataset;
    std::string resources;
    std::optional<std::size_t> sample_rows;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config_path, "JSON config file");
    cmd->add_option("--seed", f.seed, "root seed");
    cmd->add_option("--profile", f.profile, "desk | paper")->check(CLI::IsMember({"desk", "paper"}));
    cmd->add_option("--stage-order", f.stage_order, "standard | paper_compat")
        ->check(CLI::IsMember({"standard", "paper_compat"}));
    cmd->add_option("--out", f.out, "output directory");
    cmd->add_option("--dataset", f.dataset, "labeled review table");
    cmd->add_option("--resources", f.resources, "lexicon directory");
    cmd->add_option("--sample-rows", f.sample_rows, "stratified sample size (0 = all rows)");
}

// Config file first, then command-line overrides.
PipelineConfig resolve(const CommonFlags& f) {
    const auto fallback = f.profile.empty() ? pipeline::Profile::desk : pipeline::parse_profile(f.profile);
    json doc = json::object();
    if (!f.config_path.empty()) {
        std::ifstream in(f.config_path);
        if (!in) throw ConfigError("cannot read config " + f.config_path);
        try {
            doc = json::parse(in);
        } catch (const json::parse_error& e) {
            throw ConfigError("config " + f.config_path + " is not valid JSON: " + e.what());
        }
        if (!doc.is_object()) throw ConfigError("config must be a JSON object");
    }
    if (!f.profile.empty()) doc["profile"] = f.profile;
    if (f.seed) doc["seed"] = *f.seed;
    if (!f.stage_order.empty()) doc["stage_order"] = f.stage_order;
    if (!f.out.empty()) doc["output_dir"] = f.out;
    if (!f.dataset.empty()) doc["dataset"] = f.dataset;
    if (!f.resources.empty()) doc["resources"] = f.resources;
    if (f.sample_rows) doc["sample_rows"] = *f.sample_rows;
    PipelineConfig c = PipelineConfig::from_json(doc, fallback);
    if (c.resources.empty()) c.resources = REVHAWK_RESOURCE_DIR;
    return c;
}

void log_line(const std::string& s) { std::cerr << "revhawk: " << s << '\n'; }

corpus::Corpus load_training_corpus(const PipelineConfig& c) {
    if (c.dataset.empty()) throw ConfigError("no dataset given (config key 'dataset' or --dataset)");
    auto full = corpus::load_corpus(c.dataset, c.schema());
    log_line("ingest: " + full.report().to_json());
    auto sample = pipeline::sample_corpus(full, c.sample_rows, c.seed);
    if (sample.size() != full.size()) log_line("sample: rows=" + std::to_string(sample.size()));
    return sample;
}

int cmd_train(const CommonFlags& f) {
    const auto c = resolve(f);
    const auto res = pipeline::TextResources::load(c.resources);
    const auto corpus = load_training_corpus(c);
    const auto outcome = pipeline::train(corpus, c, res, log_line);
    bundle::write_training_artifacts(outcome, c, c.output_dir);
    const auto& m = outcome.test_metrics;
    std::ostringstream s;
    s.precision(4);
    s << std::fixed << "accuracy=" << m.accuracy << " precision=" << m.precision << " recall=" << m.recall
      << " f1=" << m.f1 << " auc=" << (m.auc ? *m.auc : 0.0) << " selected=" << outcome.selected_dim << "/"
      << outcome.total_dim;
    std::cout << s.str() << '\n';
    log_line("artifacts written to " + c.output_dir);
    return kOk;
}

// One review per line, or a delimited table holding the text column.
std::vector<std::string> read_texts(const fs::path& path, const std::string& text_column) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string content = buf.str();
    std::istringstream probe(content);
    CsvReader reader(probe);
    std::vector<std::string> header;
    if (reader.next(header)) {
        auto it = std::find(header.begin(), header.end(), text_column);
        if (it != header.end()) {
            const auto col = static_cast<std::size_t>(it - header.begin());
            std::vector<std::string> texts, fields;
            while (reader.next(fields)) {
                if (fields.size() != header.size())
                    throw DataError("line " + std::to_string(reader.record_line()) + ": wrong field count");
                texts.push_back(fields[col]);
            }
            return texts;
        }
    }
    std::vector<std::string> texts;
    std::istringstream lines(content);
    for (std::string line; std::getline(lines, line);) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) texts.push_back(line);
    }
    return texts;
}

int cmd_predict(const std::string& bundle_dir, const std::string& input, const std::string& output,
                const std::string& resources) {
    const auto b = bundle::load_bundle(bundle_dir);
    const auto res = pipeline::TextResources::load(resources.empty() ? b.config.resources : resources);
    const auto texts = read_texts(input, b.config.text_column);
    const auto probs = b.fitted.predict(texts, b.config, res);
    std::ofstream file;
    if (!output.empty()) {
        file.open(output, std::ios::binary);
        if (!file) throw Error("cannot write " + output);
    }
    std::ostream& out = output.empty() ? std::cout : file;
    out.precision(17);
    if (!probs.empty()) out << "row,probability_cg,label\n";
    for (std::size_t i = 0; i < probs.size(); ++i)
        out << i << ',' << probs[i] << ',' << label_name(learners::label_from_proba(probs[i])) << '\n';
    return kOk;
}

int cmd_eval(const std::string& bundle_dir, const std::string& input, const std::string& out_dir,
             const std::string& resources) {
    const auto b = bundle::load_bundle(bundle_dir);
    const auto res = pipeline::TextResources::load(resources.empty() ? b.config.resources : resources);
    const auto corpus = corpus::load_corpus(input, b.config.schema());
    const auto probs = b.fitted.predict(corpus.texts(), b.config, res);
    const Labels y = corpus.labels();
    Labels pred;
    for (double p : probs) pred.push_back(learners::label_from_proba(p));
    const auto cm = eval::confusion(y, pred);
    const auto m = eval::evaluate(y, probs);
    json report{{"config", b.config.to_json()},
                {"seed", b.config.seed},
                {"input", input},
                {"confusion", cm.to_json()},
                {"metrics", m.to_json()}};
    const fs::path dir = out_dir.empty() ? fs::path(b.config.output_dir) / "eval" : fs::path(out_dir);
    fs::create_directories(dir);
    if (m.auc) {
        eval::write_roc_csv(dir / "roc.csv", eval::roc_curve(y, probs), bundle::provenance_comment(b.config));
    } else {
        report["auc_error"] = "evaluation rows hold a single class; AUC is undefined";
        log_line("auc undefined: evaluation rows hold a single class");
    }
    bundle::write_json(report, dir / "metrics.json");
    std::cout << report["metrics"].dump() << '\n';
    return kOk;
}

// Fits the feature space on the training split, as the standard order does.
struct Featurized {
    corpus::Corpus corpus;
    Labels y;
    features::FeatureSpace space;
    FeatureMatrix X;
};

Featurized featurize_train(const PipelineConfig& c, const pipeline::TextResources& res) {
    Featurized f;
    const auto all = load_training_corpus(c);
    const auto split = corpus::stratified_split(all.labels(), c.test_fraction, pipeline::stage_seed(c.seed, "split"));
    f.corpus = all.subset(split.train);
    f.y = f.corpus.labels();
    const auto texts = f.corpus.texts();
    const auto docs = preprocess::preprocess_all(texts, c.preprocess_config(), res.preprocess);
    const auto ling = features::compute_linguistic(texts, res.lexicons);
    f.space = features::fit_feature_space(docs, ling, c.caps());
    f.X = features::transform(f.space, docs, ling);
    log_line("features: rows=" + std::to_string(f.X.rows()) + " cols=" + std::to_string(f.X.cols()));
    return f;
}

int cmd_featurize(const CommonFlags& flags) {
    const auto c = resolve(flags);
    const auto res = pipeline::TextResources::load(c.resources);
    const auto f = featurize_train(c, res);
    json blocks = json::array();
    for (const auto& b : f.space.blocks)
        blocks.push_back({{"block", features::block_kind_name(b.kind)}, {"columns", b.size()}, {"offset", b.base_offset}});
    blocks.push_back({{"block", "linguistic"}, {"columns", features::kLinguisticCount}, {"offset", f.space.linguistic_offset()}});
    std::size_t nnz = 0;
    for (std::size_t r = 0; r < f.X.rows(); ++r) nnz += f.X.row(r).size();
    const double cells = static_cast<double>(f.X.rows()) * static_cast<double>(f.X.cols());
    json report{{"config", c.to_json()},
                {"seed", c.seed},
                {"rows", f.X.rows()},
                {"total_dim", f.space.total_dim},
                {"nonzeros", nnz},
                {"density", cells > 0 ? static_cast<double>(nnz) / cells : 0.0},
                {"blocks", blocks}};
    fs::create_directories(c.output_dir);
    bundle::write_json(report, fs::path(c.output_dir) / "featurize.json");
    std::cout << report.dump() << '\n';
    return kOk;
}

int cmd_select(const CommonFlags& flags) {
    const auto c = resolve(flags);
    const auto res = pipeline::TextResources::load(c.resources);
    const auto f = featurize_train(c, res);
    const auto sel = hho::select_features(f.X, f.y, c.hho_params(), c.fitness_params(), c.knn_params());
    fs::create_directories(c.output_dir);
    const fs::path dir(c.output_dir);
    hho::save_mask(sel.mask, dir / "mask.txt");
    hho::write_convergence(sel.history, dir / "convergence.csv", bundle::provenance_comment(c));
    const double reduction = 1.0 - static_cast<double>(sel.mask.selected_count()) / static_cast<double>(sel.mask.size());
    json report{{"config", c.to_json()},
                {"seed", c.seed},
                {"total_dim", sel.mask.size()},
                {"selected", sel.mask.selected_count()},
                {"reduction", reduction},
                {"best_fitness", sel.fitness}};
    bundle::write_json(report, dir / "selection.json");
    std::cout << report.dump() << '\n';
    return kOk;
}

int cmd_resample(const CommonFlags& flags) {
    const auto c = resolve(flags);
    const auto res = pipeline::TextResources::load(c.resources);
    const auto f = featurize_train(c, res);
    const auto sel = hho::select_features(f.X, f.y, c.hho_params(), c.fitness_params(), c.knn_params());
    log_line("select: cols=" + std::to_string(sel.mask.selected_count()));
    const auto rs = resample::smoteenn(f.X.densify(sel.mask.selected_columns()), f.y, c.resample_params());
    json report{{"config", c.to_json()}, {"seed", c.seed}, {"resample", json::parse(rs.report.to_json())}};
    fs::create_directories(c.output_dir);
    bundle::write_json(report, fs::path(c.output_dir) / "resample_report.json");
    std::cout << report["resample"].dump() << '\n';
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"revhawk: computer-generated review detection"};
    app.require_subcommand(1);

    CommonFlags train_f, select_f, resample_f, feat_f;
    add_common(app.add_subcommand("train", "fit the full pipeline and write a model bundle"), train_f);
    add_common(app.add_subcommand("select", "run feature selection only"), select_f);
    add_common(app.add_subcommand("resample", "report SMOTEENN resampling of the training split"), resample_f);
    add_common(app.add_subcommand("featurize", "report feature matrix statistics"), feat_f);

    std::string bundle_dir, input, output, resources, eval_out;
    auto* predict = app.add_subcommand("predict", "score raw reviews with a bundle");
    predict->add_option("--bundle", bundle_dir, "bundle directory")->required();
    predict->add_option("--input", input, "one review per line, or a table with the text column")->required();
    predict->add_option("--output", output, "output file (default stdout)");
    predict->add_option("--resources", resources, "lexicon directory override");

    auto* evaluate = app.add_subcommand("eval", "evaluate a bundle on a labeled table");
    evaluate->add_option("--bundle", bundle_dir, "bundle directory")->required();
    evaluate->add_option("--input", input, "labeled review table")->required();
    evaluate->add_option("--out", eval_out, "output directory");
    evaluate->add_option("--resources", resources, "lexicon directory override");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    try {
        if (app.got_subcommand("train")) return cmd_train(train_f);
        if (app.got_subcommand("select")) return cmd_select(select_f);
        if (app.got_subcommand("resample")) return cmd_resample(resample_f);
        if (app.got_subcommand("featurize")) return cmd_featurize(feat_f);
        if (app.got_subcommand("predict")) return cmd_predict(bundle_dir, input, output, resources);
        if (app.got_subcommand("eval")) return cmd_eval(bundle_dir, input, eval_out, resources);
    } catch (const StageError& e) {
        std::cerr << "revhawk: error: " << e.what() << '\n';
        return e.exit_code();
    } catch (const ConfigError& e) {
        std::cerr << "revhawk: config error: " << e.what() << '\n';
        return kConfig;
    } catch (const DataError& e) {
        std::cerr << "revhawk: data error: " << e.what() << '\n';
        return kData;
    } catch (const std::exception& e) {
        std::cerr << "revhawk: error: " << e.what() << '\n';
        return kRuntime;
    }
    return kRuntime;
}
