// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revhawk Contributors

#include "revhawk/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "revhawk/csv.hpp"

namespace revhawk::corpus {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::optional<double> parse_number(std::string_view s) {
    s = trim(s);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

std::string format_rating(double r) {
    std::ostringstream os;
    os.precision(17);
    os << r;
    return os.str();
}

}  // namespace

std::string IngestionReport::to_json() const {
    std::ostringstream os;
    os << "{\"event\":\"ingestion\",\"rows_read\":" << rows_read << ",\"parsed\":" << parsed
       << ",\"dropped_empty\":" << dropped_empty << ",\"malformed\":" << malformed
       << ",\"class_counts\":{\"OR\":" << counts.original << ",\"CG\":" << counts.generated << "}}";
    return os.str();
}

Corpus::Corpus(std::vector<ReviewRecord> records, IngestionReport report)
    : records_(std::move(records)), report_(report) {
    for (const auto& r : records_) (is_cg(r.label) ? counts_.generated : counts_.original)++;
    report_.counts = counts_;
}

Labels Corpus::labels() const {
    Labels out;
    out.reserve(records_.size());
    for (const auto& r : records_) out.push_back(r.label);
    return out;
}

std::vector<std::string> Corpus::texts() const {
    std::vector<std::string> out;
    out.reserve(records_.size());
    for (const auto& r : records_) out.push_back(r.text);
    return out;
}

Corpus Corpus::subset(std::span<const std::size_t> rows) const {
    std::vector<ReviewRecord> out;
    out.reserve(rows.size());
    for (std::size_t i : rows) out.push_back(records_.at(i));
    return Corpus(std::move(out));
}

Corpus load_corpus(const std::filesystem::path& path, const ColumnSchema& schema) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open dataset file: " + path.string());

    CsvReader reader(in);
    std::vector<std::string> header;
    if (!reader.next(header)) throw DataError("dataset file is empty: " + path.string());

    auto find_col = [&](const std::string& name) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (trim(header[i]) == name) return i;
        return std::nullopt;
    };
    auto text_col = find_col(schema.text);
    auto label_col = find_col(schema.label);
    if (!text_col) throw DataError("missing required column '" + schema.text + "' in " + path.string());
    if (!label_col) throw DataError("missing required column '" + schema.label + "' in " + path.string());
    auto category_col = find_col(schema.category);
    auto rating_col = find_col(schema.rating);

    IngestionReport report;
    std::vector<ReviewRecord> records;
    std::vector<std::string> row;
    while (reader.next(row)) {
        ++report.rows_read;
        if (row.size() != header.size()) {
            ++report.malformed;
            continue;
        }
        auto label = parse_label(row[*label_col]);
        if (!label) {
            throw DataError("unknown label value '" + row[*label_col] + "' at line " +
                            std::to_string(reader.record_line()) + " of " + path.string());
        }
        ReviewRecord rec;
        rec.label = *label;
        if (rating_col && !trim(row[*rating_col]).empty()) {
            auto r = parse_number(row[*rating_col]);
            if (!r || *r < 1.0 || *r > 5.0) {
                ++report.malformed;
                continue;
            }
            rec.rating = *r;
        }
        if (trim(row[*text_col]).empty()) {
            ++report.dropped_empty;
            continue;
        }
        rec.text = std::move(row[*text_col]);
        if (category_col && !row[*category_col].empty()) rec.category = row[*category_col];
        records.push_back(std::move(rec));
        ++report.parsed;
    }
    if (records.empty()) throw DataError("no valid rows in " + path.string());
    return Corpus(std::move(records), report);
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path, const ColumnSchema& schema) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write corpus file: " + path.string());
    write_csv_row(out, {schema.category, schema.rating, schema.label, schema.text});
    for (const auto& r : corpus.records()) {
        write_csv_row(out, {r.category.value_or(""), r.rating ? format_rating(*r.rating) : "",
                            std::string(label_name(r.label)), r.text});
    }
}

SplitIndices stratified_split(const Labels& labels, double test_fraction, std::uint64_t seed) {
    if (!(test_fraction > 0.0 && test_fraction < 1.0))
        throw std::invalid_argument("test fraction must lie in (0, 1)");

    std::vector<std::size_t> members[2];
    for (std::size_t i = 0; i < labels.size(); ++i) members[is_cg(labels[i])].push_back(i);
    for (const auto& m : members)
        if (m.size() < 2) throw DataError("stratified split needs at least 2 rows per class");

    const std::size_t n = labels.size();
    const auto total_test = static_cast<std::size_t>(std::llround(static_cast<double>(n) * test_fraction));

    // Largest-remainder allocation of the test budget over the two classes.
    std::size_t alloc[2];
    double remainder[2];
    std::size_t assigned = 0;
    for (int c = 0; c < 2; ++c) {
        double exact = static_cast<double>(members[c].size()) * test_fraction;
        alloc[c] = static_cast<std::size_t>(std::floor(exact));
        remainder[c] = exact - std::floor(exact);
        assigned += alloc[c];
    }
    while (assigned < total_test) {
        int c = remainder[1] > remainder[0] ? 1 : 0;
        alloc[c]++;
        remainder[c] = -1.0;
        assigned++;
        if (remainder[0] < 0 && remainder[1] < 0) break;
    }
    for (int c = 0; c < 2; ++c) alloc[c] = std::clamp<std::size_t>(alloc[c], 1, members[c].size() - 1);

    SplitIndices split;
    split.seed = seed;
    for (int c = 0; c < 2; ++c) {
        Rng rng(derive_seed(seed, "split", {static_cast<std::uint64_t>(c)}));
        auto shuffled = members[c];
        rng.shuffle(shuffled);
        split.test.insert(split.test.end(), shuffled.begin(), shuffled.begin() + alloc[c]);
        split.train.insert(split.train.end(), shuffled.begin() + alloc[c], shuffled.end());
    }
    std::sort(split.train.begin(), split.train.end());
    std::sort(split.test.begin(), split.test.end());
    return split;
}

SplitIndices stratified_split(const Corpus& corpus, double test_fraction, std::uint64_t seed) {
    return stratified_split(corpus.labels(), test_fraction, seed);
}

std::vector<Fold> stratified_kfold(const Labels& labels, int k, std::uint64_t seed) {
    if (k < 2) throw std::invalid_argument("k-fold needs k >= 2");
    std::vector<std::size_t> members[2];
    for (std::size_t i = 0; i < labels.size(); ++i) members[is_cg(labels[i])].push_back(i);
    for (const auto& m : members)
        if (m.size() < static_cast<std::size_t>(k))
            throw DataError("every class needs at least k=" + std::to_string(k) + " rows for stratified folds");

    const auto folds_n = static_cast<std::size_t>(k);
    std::vector<int> fold_of(labels.size(), 0);
    std::size_t deal = 0;
    for (int c = 0; c < 2; ++c) {
        Rng rng(derive_seed(seed, "kfold", {static_cast<std::uint64_t>(c)}));
        auto shuffled = members[c];
        rng.shuffle(shuffled);
        for (std::size_t idx : shuffled) {
            fold_of[idx] = static_cast<int>(deal % folds_n);
            ++deal;
        }
    }
    std::vector<Fold> folds(folds_n);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        for (std::size_t f = 0; f < folds_n; ++f) {
            if (static_cast<std::size_t>(fold_of[i]) == f)
                folds[f].validation.push_back(i);
            else
                folds[f].train.push_back(i);
        }
    }
    return folds;
}

}  // namespace revhawk::corpus
