// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revhawk Contributors

#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

namespace revhawk::features {

inline constexpr std::size_t kLinguisticCount = 43;

using LinguisticVector = std::array<double, kLinguisticCount>;

/// Feature names in vector order.
const std::array<std::string_view, kLinguisticCount>& linguistic_feature_names();

struct LinguisticLexicons {
    std::unordered_set<std::string> stopwords;
    std::unordered_map<std::string, double> valence;  // token -> polarity in [-1, 1]
    std::unordered_set<std::string> superlatives;
    std::unordered_set<std::string> intensifiers;

    /// Reads stopwords.txt, valence.tsv, superlatives.txt and intensifiers.txt.
    static LinguisticLexicons load(const std::filesystem::path& dir);
};

/// Stylometric and lexical statistics of the raw review text.
///
/// Words are whitespace-separated tokens with leading and trailing
/// punctuation stripped. Sentences are segments delimited by runs of
/// '.', '!', '?' or U+2026 that contain at least one alphanumeric char.
/// Lengths count code points. Letter-based ratios (uppercase, vowel)
/// consider ASCII letters only. Every ratio with an empty denominator is 0,
/// so the empty string maps to the zero vector.
LinguisticVector linguistic_features(std::string_view raw_text, const LinguisticLexicons& lex);

/// Heuristic vowel-group syllable count, at least 1 for words with letters.
int count_syllables(std::string_view word);

}  // namespace revhawk::features
