// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revhawk Contributors

#include "revhawk/linguistic.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "revhawk/common.hpp"
#include "revhawk/preprocess.hpp"

namespace revhawk::features {

namespace {

enum Feature : std::size_t {
    kCharCount,
    kWordCount,
    kSentenceCount,
    kAvgWordLength,
    kStdWordLength,
    kMaxWordLength,
    kAvgSentenceLengthWords,
    kAvgCharsPerSentence,
    kUppercaseCharRatio,
    kUppercaseWordRatio,
    kTitlecaseWordRatio,
    kStartUppercaseSentenceRatio,
    kDigitCharRatio,
    kDigitTokenRatio,
    kPunctuationDensity,
    kExclamationCount,
    kQuestionCount,
    kPeriodCount,
    kCommaCount,
    kEllipsisCount,
    kRepeatedPunctRunCount,
    kQuoteCount,
    kWhitespaceRatio,
    kUniqueCharRatio,
    kVowelRatio,
    kRepeatedCharRunCount,
    kNonAsciiRatio,
    kTypeTokenRatio,
    kHapaxRatio,
    kMaxTokenFrequencyRatio,
    kBigramRepetitionRatio,
    kStopwordRatio,
    kNegationCount,
    kFirstPersonCount,
    kSecondPersonCount,
    kThirdPersonCount,
    kSentimentPolarity,
    kSubjectivityProxy,
    kPositiveRatio,
    kNegativeRatio,
    kSuperlativeCount,
    kIntensifierCount,
    kAvgSyllables,
};
static_assert(kAvgSyllables + 1 == kLinguisticCount);

constexpr char32_t kEllipsisChar = 0x2026;
constexpr char32_t kLeftDoubleQuote = 0x201C;
constexpr char32_t kRightDoubleQuote = 0x201D;

std::vector<char32_t> decode_utf8(std::string_view s) {
    std::vector<char32_t> out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size();) {
        auto c = static_cast<unsigned char>(s[i]);
        int len = c < 0x80 ? 1 : (c >> 5) == 0x6 ? 2 : (c >> 4) == 0xE ? 3 : (c >> 3) == 0x1E ? 4 : 1;
        if (i + static_cast<std::size_t>(len) > s.size()) len = 1;
        char32_t cp = len == 1 ? c : len == 2 ? (c & 0x1F) : len == 3 ? (c & 0x0F) : (c & 0x07);
        for (int k = 1; k < len; ++k) cp = (cp << 6) | (static_cast<unsigned char>(s[i + k]) & 0x3F);
        out.push_back(cp);
        i += static_cast<std::size_t>(len);
    }
    return out;
}

bool is_ascii(char32_t c) { return c < 0x80; }
bool is_letter(char32_t c) { return is_ascii(c) && std::isalpha(static_cast<int>(c)); }
bool is_upper(char32_t c) { return is_ascii(c) && std::isupper(static_cast<int>(c)); }
bool is_digit(char32_t c) { return c >= '0' && c <= '9'; }
bool is_alnum(char32_t c) { return is_letter(c) || is_digit(c); }
bool is_punct(char32_t c) { return is_ascii(c) && std::ispunct(static_cast<int>(c)); }
bool is_white(char32_t c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f' || c == 0xA0; }
bool is_vowel(char32_t c) {
    char32_t l = is_upper(c) ? c + 32 : c;
    return l == 'a' || l == 'e' || l == 'i' || l == 'o' || l == 'u';
}
bool is_sentence_end(char32_t c) { return c == '.' || c == '!' || c == '?' || c == kEllipsisChar; }
// Stripped from word edges: ASCII punctuation and typographic quotes/dashes.
bool is_edge_punct(char32_t c) { return is_punct(c) || (c >= 0x2010 && c <= 0x2027); }

std::string encode_lower(std::span<const char32_t> cps) {
    std::string out;
    for (char32_t c : cps) {
        if (c == 0x2019 || c == 0x2018 || c == 0x02BC) c = '\'';
        if (c < 0x80) {
            out.push_back(static_cast<char>(std::tolower(static_cast<int>(c))));
        } else if (c < 0x800) {
            out.push_back(static_cast<char>(0xC0 | (c >> 6)));
            out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
        } else if (c < 0x10000) {
            out.push_back(static_cast<char>(0xE0 | (c >> 12)));
            out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
        } else {
            out.push_back(static_cast<char>(0xF0 | (c >> 18)));
            out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
        }
    }
    return out;
}

struct Word {
    std::span<const char32_t> cps;
    std::string lower;  // lowercase UTF-8 with ASCII apostrophes
};

double ratio(double num, double den) { return den > 0.0 ? num / den : 0.0; }

const std::set<std::string>& first_person() {
    static const std::set<std::string> s = {"i", "me", "my", "mine", "myself", "we", "us", "our", "ours", "ourselves"};
    return s;
}
const std::set<std::string>& second_person() {
    static const std::set<std::string> s = {"you", "your", "yours", "yourself", "yourselves", "ya", "u"};
    return s;
}
const std::set<std::string>& third_person() {
    static const std::set<std::string> s = {"he",  "him",    "his",  "himself", "she",  "her",    "hers",
                                            "herself", "it", "its", "itself", "they", "them", "their",
                                            "theirs", "themselves"};
    return s;
}

// "i'm" -> "i", "it's" -> "it"; words without an apostrophe unchanged.
std::string_view before_apostrophe(std::string_view w) {
    auto p = w.find('\'');
    return p == std::string_view::npos ? w : w.substr(0, p);
}

}  // namespace

const std::array<std::string_view, kLinguisticCount>& linguistic_feature_names() {
    static const std::array<std::string_view, kLinguisticCount> names = {
        "char_count",
        "word_count",
        "sentence_count",
        "avg_word_length",
        "std_word_length",
        "max_word_length",
        "avg_sentence_length_words",
        "avg_chars_per_sentence",
        "uppercase_char_ratio",
        "uppercase_word_ratio",
        "titlecase_word_ratio",
        "start_uppercase_sentence_ratio",
        "digit_char_ratio",
        "digit_token_ratio",
        "punctuation_density",
        "exclamation_count",
        "question_count",
        "period_count",
        "comma_count",
        "ellipsis_count",
        "repeated_punct_run_count",
        "quote_count",
        "whitespace_ratio",
        "unique_char_ratio",
        "vowel_ratio",
        "consecutive_repeated_char_run_count",
        "nonascii_ratio",
        "type_token_ratio",
        "hapax_ratio",
        "max_token_frequency_ratio",
        "bigram_repetition_ratio",
        "stopword_ratio",
        "negation_count",
        "first_person_pronoun_count",
        "second_person_pronoun_count",
        "third_person_pronoun_count",
        "sentiment_polarity",
        "sentiment_subjectivity_proxy",
        "positive_lexicon_ratio",
        "negative_lexicon_ratio",
        "superlative_count",
        "intensifier_count",
        "avg_syllables_per_word",
    };
    return names;
}

LinguisticLexicons LinguisticLexicons::load(const std::filesystem::path& dir) {
    LinguisticLexicons lex;
    auto sw = preprocess::load_word_list(dir / "stopwords.txt");
    lex.stopwords.insert(sw.begin(), sw.end());
    auto sup = preprocess::load_word_list(dir / "superlatives.txt");
    lex.superlatives.insert(sup.begin(), sup.end());
    auto in = preprocess::load_word_list(dir / "intensifiers.txt");
    lex.intensifiers.insert(in.begin(), in.end());

    const auto path = dir / "valence.tsv";
    std::ifstream f(path);
    if (!f) throw DataError("cannot open resource file: " + path.string());
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        double v = 0.0;
        bool ok = tab != std::string::npos && tab > 0;
        if (ok) {
            try {
                std::size_t used = 0;
                v = std::stod(line.substr(tab + 1), &used);
                ok = used == line.size() - tab - 1 && v >= -1.0 && v <= 1.0;
            } catch (const std::exception&) {
                ok = false;
            }
        }
        if (!ok) throw DataError("malformed entry at " + path.string() + ":" + std::to_string(lineno));
        lex.valence[line.substr(0, tab)] = v;
    }
    return lex;
}

int count_syllables(std::string_view word) {
    int groups = 0;
    bool prev_vowel = false;
    int letters = 0;
    std::string w;
    for (char c : word) {
        if (!std::isalpha(static_cast<unsigned char>(c))) continue;
        w.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    for (char c : w) {
        ++letters;
        bool v = c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
        if (v && !prev_vowel) ++groups;
        prev_vowel = v;
    }
    if (letters == 0) return 0;
    // Silent trailing 'e' ("make"), but not "-le" ("table").
    if (groups > 1 && w.size() >= 2 && w.back() == 'e' && w[w.size() - 2] != 'l') --groups;
    return std::max(groups, 1);
}

LinguisticVector linguistic_features(std::string_view raw_text, const LinguisticLexicons& lex) {
    LinguisticVector f{};
    const auto cps = decode_utf8(raw_text);
    const double n_chars = static_cast<double>(cps.size());
    if (cps.empty()) return f;

    // Character-level statistics.
    std::size_t letters = 0, upper = 0, digits = 0, punct = 0, white = 0, vowels = 0, nonascii = 0;
    std::size_t excl = 0, quest = 0, period = 0, comma = 0, quotes = 0;
    std::set<char32_t> distinct;
    for (char32_t c : cps) {
        distinct.insert(c);
        letters += is_letter(c);
        upper += is_upper(c);
        digits += is_digit(c);
        punct += is_punct(c);
        white += is_white(c);
        vowels += is_letter(c) && is_vowel(c);
        nonascii += !is_ascii(c);
        excl += c == '!';
        quest += c == '?';
        period += c == '.';
        comma += c == ',';
        quotes += c == '"' || c == kLeftDoubleQuote || c == kRightDoubleQuote;
    }

    std::size_t ellipses = 0, punct_runs = 0, letter_runs = 0;
    for (std::size_t i = 0; i < cps.size();) {
        std::size_t j = i + 1;
        while (j < cps.size() && cps[j] == cps[i]) ++j;
        const std::size_t run = j - i;
        if (cps[i] == kEllipsisChar) ellipses += run;
        if (cps[i] == '.' && run >= 3) ++ellipses;
        if (is_punct(cps[i]) && run >= 2) ++punct_runs;
        i = j;
    }
    for (std::size_t i = 0; i < cps.size();) {
        if (!is_letter(cps[i])) {
            ++i;
            continue;
        }
        auto lc = [](char32_t c) { return is_upper(c) ? c + 32 : c; };
        std::size_t j = i + 1;
        while (j < cps.size() && is_letter(cps[j]) && lc(cps[j]) == lc(cps[i])) ++j;
        if (j - i >= 3) ++letter_runs;
        i = j;
    }

    // Words.
    std::vector<Word> words;
    for (std::size_t i = 0; i < cps.size();) {
        while (i < cps.size() && is_white(cps[i])) ++i;
        std::size_t j = i;
        while (j < cps.size() && !is_white(cps[j])) ++j;
        std::size_t b = i, e = j;
        while (b < e && is_edge_punct(cps[b])) ++b;
        while (e > b && is_edge_punct(cps[e - 1])) --e;
        if (e > b) {
            std::span<const char32_t> span(cps.data() + b, e - b);
            words.push_back({span, encode_lower(span)});
        }
        i = j;
    }

    // Sentences: first letter of each non-empty segment.
    std::size_t sentences = 0, upper_starts = 0;
    {
        bool has_alnum = false;
        std::optional<char32_t> first_letter;
        auto close = [&] {
            if (has_alnum) {
                ++sentences;
                if (first_letter && is_upper(*first_letter)) ++upper_starts;
            }
            has_alnum = false;
            first_letter.reset();
        };
        for (char32_t c : cps) {
            if (is_sentence_end(c)) {
                close();
                continue;
            }
            if (is_alnum(c)) has_alnum = true;
            if (!first_letter && is_letter(c)) first_letter = c;
        }
        close();
    }

    const double n_words = static_cast<double>(words.size());
    double len_sum = 0.0, len_max = 0.0;
    std::size_t upper_words = 0, title_words = 0, digit_tokens = 0;
    std::size_t syllable_words = 0, syllables = 0;
    for (const auto& w : words) {
        const double len = static_cast<double>(w.cps.size());
        len_sum += len;
        len_max = std::max(len_max, len);
        std::size_t wl = 0, wu = 0;
        bool has_digit = false;
        for (char32_t c : w.cps) {
            wl += is_letter(c);
            wu += is_upper(c);
            has_digit = has_digit || is_digit(c);
        }
        digit_tokens += has_digit;
        if (wl >= 2 && wu == wl) ++upper_words;
        auto first = std::find_if(w.cps.begin(), w.cps.end(), is_letter);
        if (wl >= 2 && first != w.cps.end() && is_upper(*first) && wu == 1) ++title_words;
        if (wl > 0) {
            ++syllable_words;
            syllables += static_cast<std::size_t>(count_syllables(w.lower));
        }
    }
    const double mean_len = ratio(len_sum, n_words);
    double var = 0.0;
    for (const auto& w : words) {
        const double d = static_cast<double>(w.cps.size()) - mean_len;
        var += d * d;
    }
    var = ratio(var, n_words);

    // Lexical statistics over lowercase words.
    std::map<std::string, std::size_t> freq;
    for (const auto& w : words) ++freq[w.lower];
    std::size_t hapax = 0, max_freq = 0;
    for (const auto& [_, c] : freq) {
        hapax += c == 1;
        max_freq = std::max(max_freq, c);
    }
    std::set<std::pair<std::string, std::string>> bigrams;
    for (std::size_t i = 1; i < words.size(); ++i) bigrams.emplace(words[i - 1].lower, words[i].lower);
    const double n_bigrams = words.size() > 1 ? static_cast<double>(words.size() - 1) : 0.0;

    const auto& negations = preprocess::negation_set();
    auto is_negation = [&](const std::string& w) {
        return negations.count(w) > 0 || (w.size() > 3 && w.ends_with("n't"));
    };

    std::size_t stop = 0, neg = 0, p1 = 0, p2 = 0, p3 = 0, sup = 0, inten = 0;
    std::size_t hits = 0, pos = 0, negv = 0;
    double polarity_sum = 0.0;
    for (std::size_t i = 0; i < words.size(); ++i) {
        const std::string& w = words[i].lower;
        stop += lex.stopwords.count(w) > 0;
        neg += is_negation(w);
        const std::string head(before_apostrophe(w));
        p1 += first_person().count(head) > 0;
        p2 += second_person().count(head) > 0;
        p3 += third_person().count(head) > 0;
        sup += lex.superlatives.count(w) > 0;
        inten += lex.intensifiers.count(w) > 0;
        auto it = lex.valence.find(w);
        if (it != lex.valence.end()) {
            double v = it->second;
            if (i > 0 && is_negation(words[i - 1].lower)) v *= -0.5;
            polarity_sum += v;
            ++hits;
            pos += v > 0.0;
            negv += v < 0.0;
        }
    }

    f[kCharCount] = n_chars;
    f[kWordCount] = n_words;
    f[kSentenceCount] = static_cast<double>(sentences);
    f[kAvgWordLength] = mean_len;
    f[kStdWordLength] = std::sqrt(var);
    f[kMaxWordLength] = len_max;
    f[kAvgSentenceLengthWords] = ratio(n_words, static_cast<double>(sentences));
    f[kAvgCharsPerSentence] = ratio(n_chars, static_cast<double>(sentences));
    f[kUppercaseCharRatio] = ratio(static_cast<double>(upper), static_cast<double>(letters));
    f[kUppercaseWordRatio] = ratio(static_cast<double>(upper_words), n_words);
    f[kTitlecaseWordRatio] = ratio(static_cast<double>(title_words), n_words);
    f[kStartUppercaseSentenceRatio] = ratio(static_cast<double>(upper_starts), static_cast<double>(sentences));
    f[kDigitCharRatio] = ratio(static_cast<double>(digits), n_chars);
    f[kDigitTokenRatio] = ratio(static_cast<double>(digit_tokens), n_words);
    f[kPunctuationDensity] = ratio(static_cast<double>(punct), n_chars);
    f[kExclamationCount] = static_cast<double>(excl);
    f[kQuestionCount] = static_cast<double>(quest);
    f[kPeriodCount] = static_cast<double>(period);
    f[kCommaCount] = static_cast<double>(comma);
    f[kEllipsisCount] = static_cast<double>(ellipses);
    f[kRepeatedPunctRunCount] = static_cast<double>(punct_runs);
    f[kQuoteCount] = static_cast<double>(quotes);
    f[kWhitespaceRatio] = ratio(static_cast<double>(white), n_chars);
    f[kUniqueCharRatio] = ratio(static_cast<double>(distinct.size()), n_chars);
    f[kVowelRatio] = ratio(static_cast<double>(vowels), static_cast<double>(letters));
    f[kRepeatedCharRunCount] = static_cast<double>(letter_runs);
    f[kNonAsciiRatio] = ratio(static_cast<double>(nonascii), n_chars);
    f[kTypeTokenRatio] = ratio(static_cast<double>(freq.size()), n_words);
    f[kHapaxRatio] = ratio(static_cast<double>(hapax), n_words);
    f[kMaxTokenFrequencyRatio] = ratio(static_cast<double>(max_freq), n_words);
    f[kBigramRepetitionRatio] = n_bigrams > 0 ? 1.0 - static_cast<double>(bigrams.size()) / n_bigrams : 0.0;
    f[kStopwordRatio] = ratio(static_cast<double>(stop), n_words);
    f[kNegationCount] = static_cast<double>(neg);
    f[kFirstPersonCount] = static_cast<double>(p1);
    f[kSecondPersonCount] = static_cast<double>(p2);
    f[kThirdPersonCount] = static_cast<double>(p3);
    f[kSentimentPolarity] = ratio(polarity_sum, static_cast<double>(hits));
    f[kSubjectivityProxy] = ratio(static_cast<double>(hits), n_words);
    f[kPositiveRatio] = ratio(static_cast<double>(pos), n_words);
    f[kNegativeRatio] = ratio(static_cast<double>(negv), n_words);
    f[kSuperlativeCount] = static_cast<double>(sup);
    f[kIntensifierCount] = static_cast<double>(inten);
    f[kAvgSyllables] = ratio(static_cast<double>(syllables), static_cast<double>(syllable_words));
    return f;
}

}  // namespace revhawk::features
