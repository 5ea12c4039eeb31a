// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revhawk Contributors

#include <doctest.h>

#include <regex>

#include "revhawk/common.hpp"
#include "revhawk/preprocess.hpp"
#include "support/fixtures.hpp"
#include "support/synthetic_reviews.hpp"

using namespace revhawk;
using namespace revhawk::preprocess;

namespace {

const Resources& shipped() {
    static const Resources r = Resources::load(testing::resource_dir());
    return r;
}

using Tokens = std::vector<std::string>;

}  // namespace

TEST_CASE("shipped tables hold the entries the examples rely on") {
    const auto& r = shipped();
    CHECK(r.contractions.at("can't") == "cannot");
    CHECK(r.contractions.at("don't") == "do not");
    CHECK(r.lemmas.at("better") == "good");
    CHECK(r.lemmas.at("cars") == "car");
    CHECK(r.lemmas.at("running") == "run");
    for (const char* w : {"i", "it", "this", "is"}) CHECK(r.stopwords.count(w) == 1);
    CHECK(r.contractions.size() >= 100);
    CHECK(r.stopwords.size() >= 150);
}

TEST_CASE("contraction expansion") {
    const auto& t = shipped().contractions;
    CHECK(expand_contractions(normalize_apostrophes("don’t"), t) == "do not");
    CHECK(expand_contractions("hello world", t) == "hello world");
    CHECK(expand_contractions("Can't stop", t) == "Cannot stop");
    CHECK(expand_contractions("DON'T", t) == "Do not");
    CHECK(expand_contractions("xdon't", t) == "xdon't");
}

TEST_CASE("cleaning") {
    PreprocessConfig cfg;
    // Only the URL goes; "see" is ordinary text for the cleaning step.
    CHECK(clean_text("great!!! see http://x.co", cfg) == "great !!! see");
    CHECK(clean_text("", cfg) == "");
    CHECK(clean_text("<b>nice</b> mail me a@b.com", cfg) == "nice mail me");
    CHECK(clean_text("visit www.example.com now", cfg) == "visit now");
    CHECK(clean_text("why?? ok!", cfg) == "why ?? ok !");
    cfg.preserve_emotive_punct = false;
    CHECK(clean_text("great!!! ok", cfg) == "great ok");
    cfg.lowercase = false;
    CHECK(clean_text("Hello,   World.", cfg) == "Hello World");
}

TEST_CASE("lemmatization") {
    const auto& lex = shipped().lemmas;
    CHECK(lemmatize({"running"}, lex) == Tokens{"run"});
    CHECK(lemmatize({"run"}, lex) == Tokens{"run"});
    CHECK(lemmatize({"better", "cars"}, lex) == Tokens{"good", "car"});
    CHECK(load_lemma_lexicon(testing::resource_dir() / "lemmas.tsv").size() == lex.size());
    CHECK_THROWS_AS(load_lemma_lexicon("/nonexistent/lemmas.tsv"), DataError);
}

TEST_CASE("stopword removal keeps negations") {
    PreprocessConfig cfg;
    const auto& sw = shipped().stopwords;
    CHECK(remove_stopwords({"this", "is", "not", "good"}, sw, cfg) == Tokens{"not", "good"});
    CHECK(remove_stopwords({"not", "never"}, sw, cfg) == Tokens{"not", "never"});
    CHECK(remove_stopwords({}, sw, cfg).empty());
}

TEST_CASE("keep list must cover the negations") {
    PreprocessConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.stopword_keep_list.erase("never");
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.remove_stopwords = false;
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("full document pipeline") {
    PreprocessConfig cfg;
    auto d = preprocess_document("I don’t like it!!!", cfg, shipped());
    CHECK(d.tokens == Tokens{"do", "not", "like", "!!!"});
    CHECK(d.raw == "I don’t like it!!!");
    CHECK(preprocess_document("", cfg, shipped()).tokens.empty());
}

TEST_CASE("pipeline is idempotent and strips urls, mails and tags") {
    PreprocessConfig cfg;
    auto corpus = testing::synthetic_reviews({.rows = 100, .seed = 11});
    auto texts = corpus.texts();
    texts[0] += " see https://shop.example.com/item?id=3 or mail help@shop.com <br/>";
    auto docs = preprocess_all(texts, cfg, shipped());
    const std::regex url(R"((https?://|www\.)\S+)"), mail(R"(\S+@\S+\.\S+)"), tag(R"(<[^>]*>)");
    for (std::size_t i = 0; i < docs.size(); ++i) {
        CHECK(docs[i].raw == texts[i]);
        auto again = preprocess_document(docs[i].joined(), cfg, shipped());
        CHECK(again.tokens == docs[i].tokens);
        for (const auto& t : docs[i].tokens) {
            CHECK_FALSE(std::regex_search(t, url));
            CHECK_FALSE(std::regex_search(t, mail));
            CHECK_FALSE(std::regex_search(t, tag));
        }
    }
}

TEST_CASE("negations survive the pipeline") {
    PreprocessConfig cfg;
    for (const char* text : {"It is not what I wanted", "Never again, no way", "None of them worked, nor did it"}) {
        auto d = preprocess_document(text, cfg, shipped());
        std::string joined = " " + d.joined() + " ";
        for (const char* neg : {"not", "never", "no", "none", "nor"}) {
            std::string lower = text;
            for (auto& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            if (std::regex_search(lower, std::regex(std::string("\\b") + neg + "\\b")))
                CHECK_MESSAGE(joined.find(std::string(" ") + neg + " ") != std::string::npos, text);
        }
    }
}
