// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revhawk Contributors

#include "revhawk/preprocess.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "revhawk/common.hpp"

namespace revhawk::preprocess {

namespace {

bool is_ascii_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_ascii_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }
bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
char lower(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }

std::string to_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = lower(c);
    return out;
}

bool istarts_with(std::string_view s, std::string_view prefix) {
    if (s.size() < prefix.size()) return false;
    for (std::size_t i = 0; i < prefix.size(); ++i)
        if (lower(s[i]) != prefix[i]) return false;
    return true;
}

template <class Fn>
void for_each_resource_line(const std::filesystem::path& path, Fn&& fn) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open resource file: " + path.string());
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        fn(line, lineno);
    }
}

std::unordered_map<std::string, std::string> load_table(const std::filesystem::path& path) {
    std::unordered_map<std::string, std::string> table;
    for_each_resource_line(path, [&](const std::string& line, std::size_t lineno) {
        auto tab = line.find('\t');
        if (tab == std::string::npos || tab == 0 || tab + 1 == line.size())
            throw DataError("malformed entry at " + path.string() + ":" + std::to_string(lineno));
        table.emplace(line.substr(0, tab), line.substr(tab + 1));
    });
    return table;
}

// Unicode punctuation folded to ASCII before cleaning.
struct Fold {
    std::string_view from;
    std::string_view to;
};
constexpr Fold kFolds[] = {
    {"\xE2\x80\x98", "'"},  {"\xE2\x80\x99", "'"},  {"\xCA\xBC", "'"},   {"`", "'"},
    {"\xE2\x80\x9C", "\""}, {"\xE2\x80\x9D", "\""}, {"\xE2\x80\xA6", "..."}, {"\xE2\x80\x93", "-"},
    {"\xE2\x80\x94", "-"},  {"\xC2\xA0", " "},
};

std::string fold_punctuation(std::string_view text, bool apostrophes_only) {
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size();) {
        bool matched = false;
        for (const auto& f : kFolds) {
            if (apostrophes_only && f.to != "'") continue;
            if (text.compare(i, f.from.size(), f.from) == 0) {
                out += f.to;
                i += f.from.size();
                matched = true;
                break;
            }
        }
        if (!matched) out.push_back(text[i++]);
    }
    return out;
}

bool is_email_char(char c) {
    return is_ascii_alnum(c) || c == '.' || c == '_' || c == '%' || c == '+' || c == '-';
}

// Blanks out [begin, end) with spaces.
void blank(std::string& s, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end && i < s.size(); ++i) s[i] = ' ';
}

void strip_tags(std::string& s) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '<' || i + 1 >= s.size()) continue;
        char next = s[i + 1];
        if (!(is_ascii_alpha(next) || next == '/' || next == '!')) continue;
        auto close = s.find('>', i + 1);
        auto reopen = s.find('<', i + 1);
        if (close == std::string::npos || (reopen != std::string::npos && reopen < close)) continue;
        blank(s, i, close + 1);
        i = close;
    }
}

void strip_urls(std::string& s) {
    static constexpr std::string_view kStarts[] = {"https://", "http://", "ftp://", "www."};
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i > 0 && is_ascii_alnum(s[i - 1])) continue;
        bool hit = false;
        for (auto p : kStarts) hit = hit || istarts_with(std::string_view(s).substr(i), p);
        if (!hit) continue;
        std::size_t end = i;
        while (end < s.size() && !is_space(s[end])) ++end;
        blank(s, i, end);
        i = end;
    }
}

void strip_emails(std::string& s) {
    for (std::size_t at = s.find('@'); at != std::string::npos; at = s.find('@', at + 1)) {
        std::size_t begin = at;
        while (begin > 0 && is_email_char(s[begin - 1])) --begin;
        std::size_t end = at + 1;
        while (end < s.size() && is_email_char(s[end])) ++end;
        while (end > at + 1 && (s[end - 1] == '.' || s[end - 1] == '-')) --end;
        auto domain = std::string_view(s).substr(at + 1, end - at - 1);
        if (begin == at || domain.find('.') == std::string_view::npos) continue;
        blank(s, begin, end);
    }
}

}  // namespace

const std::set<std::string>& negation_set() {
    static const std::set<std::string> kNegations = {"not", "no", "never", "none", "nor", "n't", "cannot"};
    return kNegations;
}

void PreprocessConfig::validate() const {
    if (!remove_stopwords) return;
    for (const auto& n : negation_set())
        if (!stopword_keep_list.count(n))
            throw ConfigError("stopword keep list must contain the negation '" + n + "'");
}

std::string CleanDocument::joined() const {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i) out.push_back(' ');
        out += tokens[i];
    }
    return out;
}

ContractionTable load_contractions(const std::filesystem::path& path) {
    ContractionTable raw = load_table(path);
    ContractionTable table;
    for (auto& [k, v] : raw) table.emplace(to_lower(normalize_apostrophes(k)), v);
    return table;
}

LemmaLexicon load_lemma_lexicon(const std::filesystem::path& path) { return load_table(path); }

StopwordSet load_word_list(const std::filesystem::path& path) {
    StopwordSet words;
    for_each_resource_line(path, [&](const std::string& line, std::size_t lineno) {
        std::string w = to_lower(line);
        while (!w.empty() && is_space(w.back())) w.pop_back();
        if (w.empty() || w.find_first_of(" \t") != std::string::npos)
            throw DataError("malformed entry at " + path.string() + ":" + std::to_string(lineno));
        words.insert(std::move(w));
    });
    return words;
}

Resources Resources::load(const std::filesystem::path& dir) {
    Resources r;
    r.contractions = load_contractions(dir / "contractions.tsv");
    r.lemmas = load_lemma_lexicon(dir / "lemmas.tsv");
    r.stopwords = load_word_list(dir / "stopwords.txt");
    return r;
}

std::string normalize_apostrophes(std::string_view text) { return fold_punctuation(text, true); }

std::string expand_contractions(std::string_view text, const ContractionTable& table) {
    const std::string norm = normalize_apostrophes(text);
    auto word_char = [](char c) { return is_ascii_alpha(c) || c == '\''; };

    std::string out;
    out.reserve(norm.size() + 16);
    std::size_t i = 0;
    while (i < norm.size()) {
        if (!word_char(norm[i]) || (i > 0 && is_ascii_alnum(norm[i - 1]))) {
            out.push_back(norm[i++]);
            continue;
        }
        std::size_t end = i;
        while (end < norm.size() && word_char(norm[end])) ++end;
        if (end < norm.size() && is_ascii_alnum(norm[end])) {
            // Word runs into digits; not a boundary match.
            out.append(norm, i, end - i);
            i = end;
            continue;
        }
        std::string_view word(norm.data() + i, end - i);
        // Try the whole run, then without surrounding quote marks.
        std::size_t lead = 0, trail = 0;
        auto it = table.find(to_lower(word));
        if (it == table.end()) {
            while (lead < word.size() && word[lead] == '\'') ++lead;
            while (trail < word.size() - lead && word[word.size() - 1 - trail] == '\'') ++trail;
            if (lead + trail < word.size())
                it = table.find(to_lower(word.substr(lead, word.size() - lead - trail)));
        }
        if (it == table.end()) {
            out.append(word);
        } else {
            std::string_view core = word.substr(lead, word.size() - lead - trail);
            std::string expansion = it->second;
            auto first_alpha = std::find_if(core.begin(), core.end(), is_ascii_alpha);
            if (first_alpha != core.end() && std::isupper(static_cast<unsigned char>(*first_alpha)) &&
                !expansion.empty())
                expansion[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(expansion[0])));
            out.append(word.substr(0, lead));
            out += expansion;
            out.append(word.substr(word.size() - trail));
        }
        i = end;
    }
    return out;
}

std::string clean_text(std::string_view text, const PreprocessConfig& cfg) {
    std::string s = fold_punctuation(text, false);
    strip_tags(s);
    strip_urls(s);
    strip_emails(s);

    std::string out;
    out.reserve(s.size());
    auto space = [&] {
        if (!out.empty() && out.back() != ' ') out.push_back(' ');
    };
    for (std::size_t i = 0; i < s.size();) {
        const char c = s[i];
        const auto uc = static_cast<unsigned char>(c);
        if (is_ascii_alnum(c) || uc >= 0x80) {
            out.push_back(cfg.lowercase ? lower(c) : c);
            ++i;
        } else if (c == '\'') {
            ++i;  // joins possessives: "john's" -> "johns"
        } else if ((c == '!' || c == '?') && cfg.preserve_emotive_punct) {
            std::size_t end = i;
            while (end < s.size() && s[end] == c) ++end;
            space();
            out.append(s, i, end - i);
            out.push_back(' ');
            i = end;
        } else {
            space();
            ++i;
        }
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out;
}

std::vector<std::string> tokenize(std::string_view cleaned) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < cleaned.size()) {
        while (i < cleaned.size() && is_space(cleaned[i])) ++i;
        std::size_t end = i;
        while (end < cleaned.size() && !is_space(cleaned[end])) ++end;
        if (end > i) tokens.emplace_back(cleaned.substr(i, end - i));
        i = end;
    }
    return tokens;
}

std::vector<std::string> lemmatize(std::vector<std::string> tokens, const LemmaLexicon& lexicon) {
    for (auto& t : tokens) {
        auto it = lexicon.find(t);
        if (it != lexicon.end()) t = it->second;
    }
    return tokens;
}

std::vector<std::string> remove_stopwords(std::vector<std::string> tokens, const StopwordSet& stopwords,
                                          const PreprocessConfig& cfg) {
    const auto& negations = negation_set();
    std::erase_if(tokens, [&](const std::string& t) {
        if (cfg.stopword_keep_list.count(t) || negations.count(t)) return false;
        return stopwords.count(t) > 0;
    });
    return tokens;
}

CleanDocument preprocess_document(std::string_view text, const PreprocessConfig& cfg, const Resources& res) {
    CleanDocument doc;
    doc.raw = std::string(text);
    std::string expanded = cfg.expand_contractions ? expand_contractions(text, res.contractions) : std::string(text);
    auto tokens = tokenize(clean_text(expanded, cfg));
    if (cfg.lemmatize) tokens = lemmatize(std::move(tokens), res.lemmas);
    if (cfg.remove_stopwords) tokens = remove_stopwords(std::move(tokens), res.stopwords, cfg);
    doc.tokens = std::move(tokens);
    return doc;
}

std::vector<CleanDocument> preprocess_all(const std::vector<std::string>& texts, const PreprocessConfig& cfg,
                                          const Resources& res) {
    std::vector<CleanDocument> docs(texts.size());
    parallel_for(texts.size(), [&](std::size_t i) { docs[i] = preprocess_document(texts[i], cfg, res); });
    return docs;
}

}  // namespace revhawk::preprocess
