// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revhawk Contributors

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "revhawk/linguistic.hpp"
#include "revhawk/matrix.hpp"
#include "revhawk/preprocess.hpp"

namespace revhawk::features {

enum class BlockKind { word_tfidf, char_tfidf, count };

std::string_view block_kind_name(BlockKind k) noexcept;

struct NgramRange {
    int min = 1;
    int max = 1;
    friend bool operator==(const NgramRange&, const NgramRange&) = default;
};

/// One fitted n-gram vocabulary. Local column j maps to global column
/// base_offset + j; terms are stored in lexicographic byte order.
struct VocabularyBlock {
    BlockKind kind = BlockKind::word_tfidf;
    NgramRange ngram_range;
    std::size_t max_features = 0;
    std::size_t base_offset = 0;
    std::size_t n_documents_fitted = 0;
    std::vector<std::string> terms;
    std::vector<std::size_t> document_frequency;
    std::unordered_map<std::string, std::size_t> term_to_column;  // term -> local column

    std::size_t size() const noexcept { return terms.size(); }
    bool is_tfidf() const noexcept { return kind != BlockKind::count; }
    std::optional<std::size_t> local_column(const std::string& term) const;
};

/// Smoothed inverse document frequency ln((1 + n) / (1 + df)) + 1.
double idf_weight(std::size_t df, std::size_t n_docs);

/// Word n-grams (tokens joined by one space), in document order.
std::vector<std::string> word_ngrams(const std::vector<std::string>& tokens, NgramRange range);

/// Character n-grams over UTF-8 code points of `text`.
std::vector<std::string> char_ngrams(std::string_view text, NgramRange range);

/// Keeps the max_features most frequent n-grams by total corpus count,
/// ties broken lexicographically. Throws std::invalid_argument on an empty corpus.
VocabularyBlock fit_word_tfidf(const std::vector<preprocess::CleanDocument>& docs, NgramRange range = {1, 4},
                               std::size_t max_features = 10000);
VocabularyBlock fit_char_tfidf(const std::vector<preprocess::CleanDocument>& docs, NgramRange range = {3, 6},
                               std::size_t max_features = 1500);
VocabularyBlock fit_count(const std::vector<preprocess::CleanDocument>& docs, NgramRange range = {1, 2},
                          std::size_t max_features = 2000);

/// Per-feature mean and population standard deviation of the linguistic block.
struct LinguisticScaler {
    LinguisticVector mean{};
    LinguisticVector stddev{};
    std::array<bool, kLinguisticCount> zero_variance{};

    static LinguisticScaler fit(const std::vector<LinguisticVector>& rows);
    /// (x - mean) / std, and 0 for zero-variance features.
    LinguisticVector apply(const LinguisticVector& x) const;
};

struct FeatureCaps {
    std::size_t word_max = 10000;
    std::size_t char_max = 1500;
    std::size_t count_max = 2000;
    NgramRange word_range{1, 4};
    NgramRange char_range{3, 6};
    NgramRange count_range{1, 2};
};

/// Fitted representation: word TF-IDF, char TF-IDF, counts, linguistic.
struct FeatureSpace {
    std::vector<VocabularyBlock> blocks;
    LinguisticScaler linguistic;
    std::size_t total_dim = 0;

    std::size_t linguistic_offset() const noexcept { return total_dim - kLinguisticCount; }
    /// Block name owning a global column ("word_tfidf", ..., "linguistic").
    std::string_view block_name_of(std::size_t column) const;
    /// Human-readable name of a global column, e.g. "word_tfidf:very good".
    std::string column_name(std::size_t column) const;

    /// Stable digest over every fitted statistic.
    std::string fingerprint() const;

    /// Directory layout: <kind>.vocab.tsv (term, column, df) per block plus
    /// feature_space.json with caps, ranges, dims and scaler arrays.
    void save(const std::filesystem::path& dir) const;
    static FeatureSpace load(const std::filesystem::path& dir);
};

std::vector<LinguisticVector> compute_linguistic(const std::vector<std::string>& raw_texts,
                                                 const LinguisticLexicons& lex);

FeatureSpace fit_feature_space(const std::vector<preprocess::CleanDocument>& docs,
                               const std::vector<LinguisticVector>& linguistic_rows, const FeatureCaps& caps);

FeatureSpace fit_feature_space(const std::vector<preprocess::CleanDocument>& docs,
                               const std::vector<std::string>& raw_texts, const FeatureCaps& caps,
                               const LinguisticLexicons& lex);

/// Out-of-vocabulary terms are ignored; TF-IDF blocks are L2-normalized per
/// block, the count block keeps raw counts, the linguistic block is standardized.
FeatureMatrix transform(const FeatureSpace& space, const std::vector<preprocess::CleanDocument>& docs,
                        const std::vector<LinguisticVector>& linguistic_rows);

FeatureMatrix transform(const FeatureSpace& space, const std::vector<preprocess::CleanDocument>& docs,
                        const std::vector<std::string>& raw_texts, const LinguisticLexicons& lex);

}  // namespace revhawk::features
