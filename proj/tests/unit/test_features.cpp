// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revhawk Contributors

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "revhawk/features.hpp"
#include "support/fixtures.hpp"
#include "support/synthetic_reviews.hpp"

using namespace revhawk;
using namespace revhawk::features;
using preprocess::CleanDocument;

namespace {

CleanDocument doc(std::vector<std::string> tokens) {
    CleanDocument d;
    d.tokens = std::move(tokens);
    d.raw = d.joined();
    return d;
}

std::size_t feature(std::string_view name) {
    const auto& names = linguistic_feature_names();
    auto it = std::find(names.begin(), names.end(), name);
    REQUIRE(it != names.end());
    return static_cast<std::size_t>(it - names.begin());
}

const LinguisticLexicons& lexicons() {
    static const LinguisticLexicons l = LinguisticLexicons::load(testing::resource_dir());
    return l;
}

double block_norm(const FeatureMatrix& m, std::size_t row, const VocabularyBlock& b) {
    double s = 0.0;
    auto r = m.row(row);
    for (std::size_t i = 0; i < r.size(); ++i)
        if (r.cols[i] >= b.base_offset && r.cols[i] < b.base_offset + b.size()) s += r.values[i] * r.values[i];
    return std::sqrt(s);
}

}  // namespace

TEST_CASE("idf weight") {
    CHECK(idf_weight(1, 1) == doctest::Approx(1.0));
    CHECK(idf_weight(0, 1) == doctest::Approx(1.0 + std::log(2.0)).epsilon(1e-12));
    for (std::size_t n : {1u, 7u, 1000u}) CHECK(idf_weight(n, n) == doctest::Approx(1.0));
    CHECK_THROWS(idf_weight(3, 2));
}

TEST_CASE("n-gram enumeration") {
    CHECK(char_ngrams("ab", {3, 6}).empty());
    auto g = char_ngrams("abcd", {3, 4});
    CHECK(std::set<std::string>(g.begin(), g.end()) == std::set<std::string>{"abc", "bcd", "abcd"});
    CHECK(char_ngrams("!!!", {3, 6}) == std::vector<std::string>{"!!!"});
    CHECK(word_ngrams({"very", "good"}, {1, 2}) == std::vector<std::string>{"very", "good", "very good"});
    CHECK(char_ngrams("héllo", {5, 5}) == std::vector<std::string>{"héllo"});
}

TEST_CASE("word vocabulary") {
    SUBCASE("two identical documents") {
        auto b = fit_word_tfidf({doc({"a"}), doc({"a"})}, {1, 1}, 10);
        REQUIRE(b.size() == 1);
        CHECK(b.terms[0] == "a");
        CHECK(b.document_frequency[0] == 2);
        CHECK(b.n_documents_fitted == 2);
    }
    SUBCASE("cap with a tie at the boundary") {
        // Counts: a 4, b 3, c 3, d 2, e 2, f 2, then g..l once each.
        std::vector<CleanDocument> docs{doc({"a", "a", "b", "c", "d", "e", "f"}),
                                        doc({"a", "b", "c", "d", "e", "f", "g", "h"}),
                                        doc({"a", "b", "c", "i", "j", "k", "l"})};
        auto b = fit_word_tfidf(docs, {1, 1}, 5);
        CHECK(std::set<std::string>(b.terms.begin(), b.terms.end()) ==
              std::set<std::string>{"a", "b", "c", "d", "e"});
        CHECK(b.document_frequency[*b.local_column("a")] == 3);
    }
    CHECK_THROWS(fit_word_tfidf({}, {1, 1}, 5));
}

TEST_CASE("count block emits raw counts") {
    std::vector<CleanDocument> docs{doc({"good", "good"}), doc({"very", "good"})};
    FeatureCaps caps;
    auto space = fit_feature_space(docs, std::vector<LinguisticVector>(2, LinguisticVector{}), caps);
    auto m = transform(space, docs, std::vector<LinguisticVector>(2, LinguisticVector{}));
    const auto& count = space.blocks[2];
    CHECK(m.at(0, static_cast<ColumnIndex>(count.base_offset + *count.local_column("good"))) == 2.0);
    CHECK(m.at(1, static_cast<ColumnIndex>(count.base_offset + *count.local_column("very good"))) == 1.0);
}

TEST_CASE("feature space dimension on a toy corpus matches enumeration") {
    std::vector<CleanDocument> docs{doc({"nice", "cup", "!!!"}), doc({"bad", "cup"})};
    FeatureCaps caps;
    auto space = fit_feature_space(docs, std::vector<LinguisticVector>(2, LinguisticVector{}), caps);
    // Word 1-4 grams: nice, cup, !!!, nice cup, cup !!!, nice cup !!!, bad, bad cup = 8.
    CHECK(space.blocks[0].size() == 8);
    std::set<std::string> chars;
    for (const auto& d : docs)
        for (auto& g : char_ngrams(d.joined(), caps.char_range)) chars.insert(g);
    CHECK(space.blocks[1].size() == chars.size());
    // Count 1-2 grams: nice, cup, !!!, nice cup, cup !!!, bad, bad cup = 7.
    CHECK(space.blocks[2].size() == 7);
    CHECK(space.total_dim == 8 + chars.size() + 7 + kLinguisticCount);
    CHECK(space.blocks[1].base_offset == 8);
    CHECK(space.blocks[2].base_offset == 8 + chars.size());
    CHECK(space.linguistic_offset() == 15 + chars.size());
}

TEST_CASE("unit caps give 46 columns") {
    std::vector<CleanDocument> docs{doc({"alpha", "beta"}), doc({"gamma"})};
    FeatureCaps caps{.word_max = 1, .char_max = 1, .count_max = 1};
    auto space = fit_feature_space(docs, std::vector<LinguisticVector>(2, LinguisticVector{}), caps);
    CHECK(space.total_dim == 46);
}

TEST_CASE("transform shape, norms and out-of-vocabulary rows") {
    auto corpus = testing::synthetic_reviews({.rows = 120, .seed = 5});
    auto res = preprocess::Resources::load(testing::resource_dir());
    auto docs = preprocess::preprocess_all(corpus.texts(), {}, res);
    FeatureCaps caps{.word_max = 300, .char_max = 200, .count_max = 100};
    auto space = fit_feature_space(docs, corpus.texts(), caps, lexicons());
    auto m = transform(space, docs, corpus.texts(), lexicons());
    REQUIRE(m.cols() == space.total_dim);
    REQUIRE(m.rows() == docs.size());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t b = 0; b < 2; ++b) {
            double n = block_norm(m, i, space.blocks[b]);
            CHECK((std::abs(n) < 1e-9 || std::abs(n - 1.0) < 1e-9));
        }

    // Linguistic columns are standardized on the fitting rows.
    for (std::size_t f = 0; f < kLinguisticCount; ++f) {
        if (space.linguistic.zero_variance[f]) continue;
        double s = 0, s2 = 0;
        const auto col = static_cast<ColumnIndex>(space.linguistic_offset() + f);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            s += m.at(i, col);
            s2 += m.at(i, col) * m.at(i, col);
        }
        const double mean = s / m.rows();
        CHECK(std::abs(mean) < 1e-9);
        CHECK(std::abs(std::sqrt(s2 / m.rows() - mean * mean) - 1.0) < 1e-6);
    }

    std::vector<std::string> raw{"Zzyzx qwop"};
    auto oov_docs = preprocess::preprocess_all(raw, {}, res);
    auto oov = transform(space, oov_docs, raw, lexicons());
    auto r = oov.row(0);
    bool any_linguistic = false;
    for (std::size_t i = 0; i < r.size(); ++i) {
        CHECK(r.cols[i] >= space.linguistic_offset());
        any_linguistic = true;
    }
    CHECK(any_linguistic);

    // Row permutation commutes with transform.
    std::vector<std::size_t> perm(docs.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = perm.size() - 1 - i;
    std::vector<CleanDocument> pdocs;
    std::vector<std::string> ptexts;
    for (auto p : perm) {
        pdocs.push_back(docs[p]);
        ptexts.push_back(corpus[p].text);
    }
    CHECK(transform(space, pdocs, ptexts, lexicons()) == m.select_rows(perm));
}

TEST_CASE("single document fit has unit norm tf-idf rows") {
    std::vector<CleanDocument> docs{doc({"red", "red", "cup"})};
    auto space = fit_feature_space(docs, std::vector<LinguisticVector>(1, LinguisticVector{}), FeatureCaps{});
    auto m = transform(space, docs, std::vector<LinguisticVector>(1, LinguisticVector{}));
    // Every idf is 1 with one document, so word unigrams carry raw counts before scaling.
    const auto& w = space.blocks[0];
    const double norm = std::sqrt(4.0 + 1.0 + 1.0 + 1.0 + 1.0);  // red, cup, red red, red cup, red red cup
    CHECK(m.at(0, static_cast<ColumnIndex>(w.base_offset + *w.local_column("red"))) ==
          doctest::Approx(2.0 / norm).epsilon(1e-12));
    CHECK(block_norm(m, 0, w) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(block_norm(m, 0, space.blocks[1]) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("feature space save and load") {
    auto corpus = testing::synthetic_reviews({.rows = 60, .seed = 8});
    auto res = preprocess::Resources::load(testing::resource_dir());
    auto docs = preprocess::preprocess_all(corpus.texts(), {}, res);
    FeatureCaps caps{.word_max = 100, .char_max = 80, .count_max = 50};
    auto space = fit_feature_space(docs, corpus.texts(), caps, lexicons());
    auto dir = testing::scratch_dir("space");
    space.save(dir);
    auto back = FeatureSpace::load(dir);
    CHECK(back.fingerprint() == space.fingerprint());
    CHECK(transform(back, docs, corpus.texts(), lexicons()) == transform(space, docs, corpus.texts(), lexicons()));
}

TEST_CASE("linguistic features") {
    const auto& names = linguistic_feature_names();
    CHECK(names.size() == 43);
    CHECK(std::set<std::string_view>(names.begin(), names.end()).size() == 43);
    CHECK(names.front() == "char_count");
    CHECK(names.back() == "avg_syllables_per_word");

    auto empty = linguistic_features("", lexicons());
    for (double v : empty) CHECK(v == 0.0);

    auto wow = linguistic_features("WOW!!!", lexicons());
    CHECK(wow[feature("uppercase_char_ratio")] == 1.0);
    CHECK(wow[feature("exclamation_count")] == 3.0);
    CHECK(wow[feature("repeated_punct_run_count")] == 1.0);

    auto good = linguistic_features("good good good", lexicons());
    CHECK(good[feature("max_token_frequency_ratio")] == 1.0);
    CHECK(good[feature("type_token_ratio")] == doctest::Approx(1.0 / 3.0));
    CHECK(good[feature("positive_lexicon_ratio")] == 1.0);
    CHECK(good[feature("sentiment_polarity")] > 0.0);

    auto mixed = linguistic_features("This is the best thing ever. I do not like the smell, honestly...", lexicons());
    CHECK(mixed[feature("sentence_count")] == 2.0);
    CHECK(mixed[feature("superlative_count")] >= 1.0);
    CHECK(mixed[feature("negation_count")] == 1.0);
    CHECK(mixed[feature("first_person_pronoun_count")] == 1.0);
    CHECK(mixed[feature("ellipsis_count")] == 1.0);
    for (double v : mixed) CHECK(std::isfinite(v));

    CHECK(count_syllables("cat") == 1);
    CHECK(count_syllables("table") >= 1);
    CHECK(count_syllables("beautiful") == 3);
}
