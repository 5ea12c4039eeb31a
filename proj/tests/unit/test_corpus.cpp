// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revhawk Contributors

#include <doctest.h>

#include <fstream>
#include <set>

#include "revhawk/corpus.hpp"
#include "support/fixtures.hpp"
#include "support/synthetic_reviews.hpp"

using namespace revhawk;
using namespace revhawk::corpus;

namespace {

std::filesystem::path write_file(const std::string& name, const std::string& content) {
    auto dir = testing::scratch_dir("corpus");
    auto p = dir / name;
    std::ofstream(p, std::ios::binary) << content;
    return p;
}

Labels balanced(std::size_t per_class) {
    Labels y;
    for (std::size_t i = 0; i < per_class; ++i) {
        y.push_back(Label::OR);
        y.push_back(Label::CG);
    }
    return y;
}

}  // namespace

TEST_CASE("labels parse case-insensitively") {
    CHECK(parse_label("cg") == Label::CG);
    CHECK(parse_label("OR") == Label::OR);
    CHECK(parse_label(" Or ") == Label::OR);
    CHECK_FALSE(parse_label("fake").has_value());
}

TEST_CASE("single-row file") {
    auto p = write_file("one.csv", "text_,label\nhello,OR\n");
    auto c = load_corpus(p);
    CHECK(c.size() == 1);
    CHECK(c.class_counts().original == 1);
    CHECK(c.class_counts().generated == 0);
}

TEST_CASE("quoted fields, lowercase labels, blank and malformed rows") {
    auto p = write_file("mixed.csv",
                        "category,rating,label,text_\n"
                        "Books_5,5.0,cg,\"Loved it, truly.\nTwo lines \"\"quoted\"\"\"\n"
                        "Books_5,4.0,OR,\"   \"\n"
                        "Books_5,9.0,OR,bad rating\n"
                        "Books_5,3.0,OR\n"
                        "Books_5,,OR,fine\n");
    auto c = load_corpus(p);
    REQUIRE(c.size() == 2);
    CHECK(c[0].label == Label::CG);
    CHECK(c[0].text == "Loved it, truly.\nTwo lines \"quoted\"");
    CHECK(c[0].rating == 5.0);
    CHECK_FALSE(c[1].rating.has_value());
    CHECK(c.report().dropped_empty == 1);
    CHECK(c.report().malformed == 2);
    CHECK(c.report().rows_read == 5);
}

TEST_CASE("loader errors") {
    CHECK_THROWS_AS(load_corpus("/nonexistent/file.csv"), DataError);
    CHECK_THROWS_AS(load_corpus(write_file("nolabel.csv", "text_\nhi\n")), DataError);
    CHECK_THROWS_AS(load_corpus(write_file("badlabel.csv", "text_,label\nhi,maybe\n")), DataError);
    CHECK_THROWS_AS(load_corpus(write_file("empty.csv", "text_,label\n  ,OR\n")), DataError);
}

TEST_CASE("custom schema") {
    auto p = write_file("schema.csv", "body,cls\nhello,CG\n");
    ColumnSchema s;
    s.text = "body";
    s.label = "cls";
    CHECK(load_corpus(p, s)[0].label == Label::CG);
}

TEST_CASE("save and reload round-trips order and labels") {
    auto c = testing::synthetic_reviews({.rows = 50, .seed = 3});
    auto dir = testing::scratch_dir("roundtrip");
    save_corpus(c, dir / "c.csv");
    auto back = load_corpus(dir / "c.csv");
    REQUIRE(back.size() == c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        CHECK(back[i].text == c[i].text);
        CHECK(back[i].label == c[i].label);
        CHECK(back[i].category == c[i].category);
        CHECK(back[i].rating == c[i].rating);
    }
}

TEST_CASE("split sizes for 21905 rows at 15 percent") {
    Labels y(21905, Label::OR);
    for (std::size_t i = 0; i < 10950; ++i) y[i] = Label::CG;
    auto s = stratified_split(y, 0.15, 1);
    CHECK(s.test.size() == 3286);
    CHECK(s.train.size() == 18619);
}

TEST_CASE("split of ten rows is exactly proportional and disjoint") {
    auto y = balanced(5);
    auto s = stratified_split(y, 0.2, 9);
    REQUIRE(s.test.size() == 2);
    CHECK(y[s.test[0]] != y[s.test[1]]);
    std::set<std::size_t> all(s.train.begin(), s.train.end());
    for (auto i : s.test) CHECK(all.insert(i).second);
    CHECK(all.size() == y.size());
    auto again = stratified_split(y, 0.2, 9);
    CHECK(again.train == s.train);
    CHECK(again.test == s.test);
}

TEST_CASE("split argument errors") {
    auto y = balanced(5);
    CHECK_THROWS(stratified_split(y, 0.0, 1));
    CHECK_THROWS(stratified_split(y, 1.0, 1));
    Labels tiny{Label::CG, Label::OR, Label::OR};
    CHECK_THROWS_AS(stratified_split(tiny, 0.5, 1), DataError);
}

TEST_CASE("k folds partition the rows with balanced class counts") {
    SUBCASE("ten labels, k=5") {
        auto y = balanced(5);
        auto folds = stratified_kfold(y, 5, 2);
        REQUIRE(folds.size() == 5);
        for (const auto& f : folds) {
            REQUIRE(f.validation.size() == 2);
            CHECK(y[f.validation[0]] != y[f.validation[1]]);
        }
    }
    SUBCASE("four labels, k=2") {
        auto y = balanced(2);
        auto folds = stratified_kfold(y, 2, 2);
        for (const auto& f : folds) {
            REQUIRE(f.validation.size() == 2);
            CHECK(y[f.validation[0]] != y[f.validation[1]]);
        }
    }
    SUBCASE("uneven classes") {
        Labels y;
        for (int i = 0; i < 23; ++i) y.push_back(i % 3 == 0 ? Label::CG : Label::OR);
        auto folds = stratified_kfold(y, 4, 5);
        std::set<std::size_t> seen;
        std::vector<std::size_t> cg, orr;
        for (const auto& f : folds) {
            std::size_t c = 0, o = 0;
            for (auto i : f.validation) {
                CHECK(seen.insert(i).second);
                (is_cg(y[i]) ? c : o)++;
            }
            cg.push_back(c);
            orr.push_back(o);
            CHECK(f.train.size() + f.validation.size() == y.size());
        }
        CHECK(seen.size() == y.size());
        CHECK(*std::max_element(cg.begin(), cg.end()) - *std::min_element(cg.begin(), cg.end()) <= 1);
        CHECK(*std::max_element(orr.begin(), orr.end()) - *std::min_element(orr.begin(), orr.end()) <= 1);
    }
    CHECK_THROWS(stratified_kfold(balanced(5), 1, 0));
    CHECK_THROWS_AS(stratified_kfold(balanced(2), 3, 0), DataError);
}
