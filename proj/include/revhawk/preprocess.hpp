// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revhawk Contributors

#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace revhawk::preprocess {

/// Negations that stopword removal never drops.
const std::set<std::string>& negation_set();

struct PreprocessConfig {
    bool expand_contractions = true;
    bool lowercase = true;
    bool preserve_emotive_punct = true;
    bool lemmatize = true;
    bool remove_stopwords = true;
    std::set<std::string> stopword_keep_list = negation_set();

    /// Throws ConfigError when stopword removal is on and the keep list is
    /// missing any negation.
    void validate() const;
};

/// A preprocessed review. `raw` is the text exactly as ingested.
struct CleanDocument {
    std::vector<std::string> tokens;
    std::string raw;

    /// Tokens joined by single spaces.
    std::string joined() const;
};

using ContractionTable = std::unordered_map<std::string, std::string>;
using LemmaLexicon = std::unordered_map<std::string, std::string>;
using StopwordSet = std::unordered_set<std::string>;

/// Line-oriented resource files. Tab-separated tables; '#' starts a comment line.
ContractionTable load_contractions(const std::filesystem::path& path);
LemmaLexicon load_lemma_lexicon(const std::filesystem::path& path);
StopwordSet load_word_list(const std::filesystem::path& path);

struct Resources {
    ContractionTable contractions;
    LemmaLexicon lemmas;
    StopwordSet stopwords;

    /// Loads contractions.tsv, lemmas.tsv and stopwords.txt from a directory.
    static Resources load(const std::filesystem::path& dir);
};

/// Maps typographic apostrophes (U+2018, U+2019, U+02BC, backtick) to '.
std::string normalize_apostrophes(std::string_view text);

/// Replaces table entries matched case-insensitively on word boundaries.
/// An uppercase first letter in the match is carried over to the expansion.
std::string expand_contractions(std::string_view text, const ContractionTable& table);

/// Removes markup tags, URLs and e-mail addresses, keeps runs of '!' and '?'
/// as separate tokens when configured, strips other punctuation and
/// collapses whitespace.
std::string clean_text(std::string_view text, const PreprocessConfig& cfg);

std::vector<std::string> tokenize(std::string_view cleaned);

std::vector<std::string> lemmatize(std::vector<std::string> tokens, const LemmaLexicon& lexicon);

std::vector<std::string> remove_stopwords(std::vector<std::string> tokens, const StopwordSet& stopwords,
                                          const PreprocessConfig& cfg);

/// expand_contractions -> clean_text -> tokenize -> lemmatize -> remove_stopwords.
CleanDocument preprocess_document(std::string_view text, const PreprocessConfig& cfg, const Resources& res);

/// Preprocesses every text; output order follows input order.
std::vector<CleanDocument> preprocess_all(const std::vector<std::string>& texts, const PreprocessConfig& cfg,
                                          const Resources& res);

}  // namespace revhawk::preprocess
