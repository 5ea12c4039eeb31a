// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revhawk Contributors

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "revhawk/common.hpp"

namespace revhawk::corpus {

struct ReviewRecord {
    std::string text;
    Label label = Label::OR;
    std::optional<std::string> category;
    std::optional<double> rating;  // in [1, 5] when present
};

/// Column names in the input table. Defaults follow the public
/// computer-generated reviews distribution (category,rating,label,text_).
struct ColumnSchema {
    std::string text = "text_";
    std::string label = "label";
    std::string category = "category";
    std::string rating = "rating";
};

struct IngestionReport {
    std::size_t rows_read = 0;
    std::size_t parsed = 0;
    std::size_t dropped_empty = 0;
    std::size_t malformed = 0;
    ClassCounts counts;

    /// Single-line JSON for the diagnostic stream.
    std::string to_json() const;
};

/// Immutable ordered collection of labeled reviews.
class Corpus {
public:
    Corpus() = default;
    explicit Corpus(std::vector<ReviewRecord> records, IngestionReport report = {});

    const std::vector<ReviewRecord>& records() const noexcept { return records_; }
    const ReviewRecord& operator[](std::size_t i) const { return records_[i]; }
    std::size_t size() const noexcept { return records_.size(); }
    bool empty() const noexcept { return records_.empty(); }
    const ClassCounts& class_counts() const noexcept { return counts_; }
    const IngestionReport& report() const noexcept { return report_; }

    Labels labels() const;
    std::vector<std::string> texts() const;

    /// New corpus made of the given rows, in the given order.
    Corpus subset(std::span<const std::size_t> rows) const;

private:
    std::vector<ReviewRecord> records_;
    ClassCounts counts_;
    IngestionReport report_;
};

/// Loads a delimited table with a header row.
/// Throws DataError on a missing file, missing text/label column, an unknown
/// label value or when no valid rows remain. Rows with blank text are dropped,
/// rows with the wrong field count or an unparsable rating are skipped as
/// malformed; both are counted in the report.
Corpus load_corpus(const std::filesystem::path& path, const ColumnSchema& schema = {});

/// Writes category,rating,label,text columns using the schema's names.
void save_corpus(const Corpus& corpus, const std::filesystem::path& path, const ColumnSchema& schema = {});

struct SplitIndices {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
    std::uint64_t seed = 0;
};

/// Per-class shuffled holdout split. The total test size is
/// round(n * test_fraction); classes receive floor(n_c * f) rows plus the
/// leftover by largest fractional remainder, clamped so each class keeps at
/// least one row on both sides. Indices in both lists are ascending.
SplitIndices stratified_split(const Labels& labels, double test_fraction, std::uint64_t seed);
SplitIndices stratified_split(const Corpus& corpus, double test_fraction, std::uint64_t seed);

struct Fold {
    std::vector<std::size_t> train;
    std::vector<std::size_t> validation;
};

/// k stratified folds. Each class is shuffled and dealt round-robin; the deal
/// position carries over between classes so fold sizes stay balanced.
std::vector<Fold> stratified_kfold(const Labels& labels, int k, std::uint64_t seed);

}  // namespace revhawk::corpus
