// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revhawk Contributors

#include "revhawk/features.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

#include <json.hpp>

#include "revhawk/common.hpp"

namespace revhawk::features {

namespace {

using Json = nlohmann::json;

// Split UTF-8 into code point substrings.
std::vector<std::string_view> code_points(std::string_view s) {
    std::vector<std::string_view> out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size();) {
        auto c = static_cast<unsigned char>(s[i]);
        std::size_t len = c < 0x80 ? 1 : (c >> 5) == 0x6 ? 2 : (c >> 4) == 0xE ? 3 : (c >> 3) == 0x1E ? 4 : 1;
        len = std::min(len, s.size() - i);
        out.push_back(s.substr(i, len));
        i += len;
    }
    return out;
}

std::vector<std::string> grams_for(BlockKind kind, NgramRange range, const preprocess::CleanDocument& doc) {
    if (kind == BlockKind::char_tfidf) return char_ngrams(doc.joined(), range);
    return word_ngrams(doc.tokens, range);
}

void check_range(NgramRange r) {
    if (r.min < 1 || r.max < r.min) throw std::invalid_argument("invalid n-gram range");
}

VocabularyBlock fit_block(BlockKind kind, const std::vector<preprocess::CleanDocument>& docs, NgramRange range,
                          std::size_t max_features) {
    if (docs.empty()) throw std::invalid_argument("cannot fit a vocabulary on an empty corpus");
    check_range(range);

    struct Stat {
        std::size_t total = 0;
        std::size_t df = 0;
        std::size_t last_doc = SIZE_MAX;
    };
    std::unordered_map<std::string, Stat> stats;
    for (std::size_t d = 0; d < docs.size(); ++d) {
        for (auto& g : grams_for(kind, range, docs[d])) {
            auto& s = stats[std::move(g)];
            ++s.total;
            if (s.last_doc != d) {
                ++s.df;
                s.last_doc = d;
            }
        }
    }

    std::vector<std::pair<const std::string*, const Stat*>> ranked;
    ranked.reserve(stats.size());
    for (const auto& [term, s] : stats) ranked.emplace_back(&term, &s);
    auto by_frequency = [](const auto& a, const auto& b) {
        if (a.second->total != b.second->total) return a.second->total > b.second->total;
        return *a.first < *b.first;
    };
    const std::size_t keep = std::min(max_features, ranked.size());
    std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(keep), ranked.end(), by_frequency);
    ranked.resize(keep);
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return *a.first < *b.first; });

    VocabularyBlock block;
    block.kind = kind;
    block.ngram_range = range;
    block.max_features = max_features;
    block.n_documents_fitted = docs.size();
    block.terms.reserve(keep);
    block.document_frequency.reserve(keep);
    for (std::size_t j = 0; j < keep; ++j) {
        block.terms.push_back(*ranked[j].first);
        block.document_frequency.push_back(ranked[j].second->df);
        block.term_to_column.emplace(*ranked[j].first, j);
    }
    return block;
}

void append_block_row(const VocabularyBlock& block, const preprocess::CleanDocument& doc,
                      std::vector<std::pair<ColumnIndex, double>>& row) {
    std::map<std::size_t, double> counts;
    for (const auto& g : grams_for(block.kind, block.ngram_range, doc)) {
        auto it = block.term_to_column.find(g);
        if (it != block.term_to_column.end()) counts[it->second] += 1.0;
    }
    if (counts.empty()) return;
    if (block.is_tfidf()) {
        double norm2 = 0.0;
        for (auto& [j, v] : counts) {
            v *= idf_weight(block.document_frequency[j], block.n_documents_fitted);
            norm2 += v * v;
        }
        const double norm = std::sqrt(norm2);
        for (auto& [j, v] : counts) v /= norm;
    }
    for (const auto& [j, v] : counts) row.emplace_back(static_cast<ColumnIndex>(block.base_offset + j), v);
}

Json range_json(NgramRange r) { return Json::array({r.min, r.max}); }

}  // namespace

std::string_view block_kind_name(BlockKind k) noexcept {
    switch (k) {
        case BlockKind::word_tfidf: return "word_tfidf";
        case BlockKind::char_tfidf: return "char_tfidf";
        case BlockKind::count: return "count";
    }
    return "unknown";
}

std::optional<std::size_t> VocabularyBlock::local_column(const std::string& term) const {
    auto it = term_to_column.find(term);
    if (it == term_to_column.end()) return std::nullopt;
    return it->second;
}

double idf_weight(std::size_t df, std::size_t n_docs) {
    if (n_docs < 1) throw std::invalid_argument("idf needs at least one document");
    if (df > n_docs) throw std::invalid_argument("document frequency exceeds document count");
    return std::log((1.0 + static_cast<double>(n_docs)) / (1.0 + static_cast<double>(df))) + 1.0;
}

std::vector<std::string> word_ngrams(const std::vector<std::string>& tokens, NgramRange range) {
    check_range(range);
    std::vector<std::string> out;
    for (int n = range.min; n <= range.max; ++n) {
        const auto un = static_cast<std::size_t>(n);
        for (std::size_t i = 0; i + un <= tokens.size(); ++i) {
            std::string g = tokens[i];
            for (std::size_t k = 1; k < un; ++k) {
                g.push_back(' ');
                g += tokens[i + k];
            }
            out.push_back(std::move(g));
        }
    }
    return out;
}

std::vector<std::string> char_ngrams(std::string_view text, NgramRange range) {
    check_range(range);
    const auto cps = code_points(text);
    std::vector<std::string> out;
    for (int n = range.min; n <= range.max; ++n) {
        const auto un = static_cast<std::size_t>(n);
        for (std::size_t i = 0; i + un <= cps.size(); ++i) {
            const char* begin = cps[i].data();
            const char* end = cps[i + un - 1].data() + cps[i + un - 1].size();
            out.emplace_back(begin, end);
        }
    }
    return out;
}

VocabularyBlock fit_word_tfidf(const std::vector<preprocess::CleanDocument>& docs, NgramRange range,
                               std::size_t max_features) {
    return fit_block(BlockKind::word_tfidf, docs, range, max_features);
}

VocabularyBlock fit_char_tfidf(const std::vector<preprocess::CleanDocument>& docs, NgramRange range,
                               std::size_t max_features) {
    return fit_block(BlockKind::char_tfidf, docs, range, max_features);
}

VocabularyBlock fit_count(const std::vector<preprocess::CleanDocument>& docs, NgramRange range,
                          std::size_t max_features) {
    return fit_block(BlockKind::count, docs, range, max_features);
}

LinguisticScaler LinguisticScaler::fit(const std::vector<LinguisticVector>& rows) {
    LinguisticScaler s;
    if (rows.empty()) throw std::invalid_argument("cannot fit a scaler on zero rows");
    const double n = static_cast<double>(rows.size());
    for (std::size_t j = 0; j < kLinguisticCount; ++j) {
        double sum = 0.0;
        for (const auto& r : rows) sum += r[j];
        const double mean = sum / n;
        double ss = 0.0;
        for (const auto& r : rows) ss += (r[j] - mean) * (r[j] - mean);
        s.mean[j] = mean;
        s.stddev[j] = std::sqrt(ss / n);
        s.zero_variance[j] = s.stddev[j] == 0.0;
    }
    return s;
}

LinguisticVector LinguisticScaler::apply(const LinguisticVector& x) const {
    LinguisticVector out{};
    for (std::size_t j = 0; j < kLinguisticCount; ++j)
        out[j] = zero_variance[j] ? 0.0 : (x[j] - mean[j]) / stddev[j];
    return out;
}

std::string_view FeatureSpace::block_name_of(std::size_t column) const {
    for (const auto& b : blocks)
        if (column >= b.base_offset && column < b.base_offset + b.size()) return block_kind_name(b.kind);
    if (column >= linguistic_offset() && column < total_dim) return "linguistic";
    throw std::out_of_range("column outside feature space");
}

std::string FeatureSpace::column_name(std::size_t column) const {
    for (const auto& b : blocks)
        if (column >= b.base_offset && column < b.base_offset + b.size())
            return std::string(block_kind_name(b.kind)) + ":" + b.terms[column - b.base_offset];
    if (column >= linguistic_offset() && column < total_dim)
        return "linguistic:" + std::string(linguistic_feature_names()[column - linguistic_offset()]);
    throw std::out_of_range("column outside feature space");
}

std::string FeatureSpace::fingerprint() const {
    Fingerprint fp;
    fp.add(static_cast<std::uint64_t>(total_dim));
    for (const auto& b : blocks) {
        fp.add(block_kind_name(b.kind));
        fp.add(static_cast<std::uint64_t>(b.base_offset));
        fp.add(static_cast<std::uint64_t>(b.n_documents_fitted));
        for (std::size_t j = 0; j < b.size(); ++j) {
            fp.add(b.terms[j]);
            fp.add(static_cast<std::uint64_t>(b.document_frequency[j]));
        }
    }
    for (std::size_t j = 0; j < kLinguisticCount; ++j) {
        fp.add(linguistic.mean[j]);
        fp.add(linguistic.stddev[j]);
    }
    return fp.hex();
}

void FeatureSpace::save(const std::filesystem::path& dir) const {
    std::filesystem::create_directories(dir);
    Json meta;
    meta["total_dim"] = total_dim;
    meta["linguistic_offset"] = linguistic_offset();
    meta["linguistic_names"] = Json::array();
    for (auto n : linguistic_feature_names()) meta["linguistic_names"].push_back(std::string(n));
    meta["scaler_mean"] = linguistic.mean;
    meta["scaler_std"] = linguistic.stddev;
    meta["scaler_zero_variance"] = linguistic.zero_variance;
    meta["blocks"] = Json::array();
    for (const auto& b : blocks) {
        const std::string name(block_kind_name(b.kind));
        meta["blocks"].push_back({{"kind", name},
                                  {"ngram_range", range_json(b.ngram_range)},
                                  {"max_features", b.max_features},
                                  {"base_offset", b.base_offset},
                                  {"size", b.size()},
                                  {"n_documents_fitted", b.n_documents_fitted},
                                  {"vocabulary_file", name + ".vocab.tsv"}});
        std::ofstream out(dir / (name + ".vocab.tsv"), std::ios::binary);
        if (!out) throw Error("cannot write vocabulary file in " + dir.string());
        for (std::size_t j = 0; j < b.size(); ++j)
            out << b.terms[j] << '\t' << (b.base_offset + j) << '\t' << b.document_frequency[j] << '\n';
    }
    std::ofstream out(dir / "feature_space.json", std::ios::binary);
    if (!out) throw Error("cannot write feature_space.json in " + dir.string());
    out << meta.dump(2) << '\n';
}

FeatureSpace FeatureSpace::load(const std::filesystem::path& dir) {
    std::ifstream in(dir / "feature_space.json");
    if (!in) throw DataError("missing feature_space.json in " + dir.string());
    Json meta = Json::parse(in);
    FeatureSpace space;
    space.total_dim = meta.at("total_dim").get<std::size_t>();
    space.linguistic.mean = meta.at("scaler_mean").get<LinguisticVector>();
    space.linguistic.stddev = meta.at("scaler_std").get<LinguisticVector>();
    space.linguistic.zero_variance = meta.at("scaler_zero_variance").get<std::array<bool, kLinguisticCount>>();
    for (const auto& jb : meta.at("blocks")) {
        VocabularyBlock b;
        const auto kind = jb.at("kind").get<std::string>();
        if (kind == "word_tfidf")
            b.kind = BlockKind::word_tfidf;
        else if (kind == "char_tfidf")
            b.kind = BlockKind::char_tfidf;
        else if (kind == "count")
            b.kind = BlockKind::count;
        else
            throw DataError("unknown block kind '" + kind + "'");
        b.ngram_range = {jb.at("ngram_range")[0].get<int>(), jb.at("ngram_range")[1].get<int>()};
        b.max_features = jb.at("max_features").get<std::size_t>();
        b.base_offset = jb.at("base_offset").get<std::size_t>();
        b.n_documents_fitted = jb.at("n_documents_fitted").get<std::size_t>();
        const auto size = jb.at("size").get<std::size_t>();

        std::ifstream vf(dir / jb.at("vocabulary_file").get<std::string>(), std::ios::binary);
        if (!vf) throw DataError("missing vocabulary file for block " + kind);
        std::string line;
        while (std::getline(vf, line)) {
            auto t1 = line.find('\t');
            auto t2 = line.find('\t', t1 + 1);
            if (t1 == std::string::npos || t2 == std::string::npos)
                throw DataError("malformed vocabulary line in block " + kind);
            const std::size_t col = std::stoull(line.substr(t1 + 1, t2 - t1 - 1));
            if (col != b.base_offset + b.terms.size())
                throw DataError("vocabulary columns are not contiguous in block " + kind);
            b.term_to_column.emplace(line.substr(0, t1), b.terms.size());
            b.terms.push_back(line.substr(0, t1));
            b.document_frequency.push_back(std::stoull(line.substr(t2 + 1)));
        }
        if (b.terms.size() != size) throw DataError("vocabulary size mismatch in block " + kind);
        space.blocks.push_back(std::move(b));
    }
    std::size_t expected = kLinguisticCount;
    for (const auto& b : space.blocks) expected += b.size();
    if (expected != space.total_dim) throw DataError("feature space dimension mismatch");
    return space;
}

std::vector<LinguisticVector> compute_linguistic(const std::vector<std::string>& raw_texts,
                                                 const LinguisticLexicons& lex) {
    std::vector<LinguisticVector> rows(raw_texts.size());
    parallel_for(raw_texts.size(), [&](std::size_t i) { rows[i] = linguistic_features(raw_texts[i], lex); });
    return rows;
}

FeatureSpace fit_feature_space(const std::vector<preprocess::CleanDocument>& docs,
                               const std::vector<LinguisticVector>& linguistic_rows, const FeatureCaps& caps) {
    if (docs.size() != linguistic_rows.size())
        throw std::invalid_argument("documents and linguistic rows are not aligned");
    FeatureSpace space;
    space.blocks.push_back(fit_word_tfidf(docs, caps.word_range, caps.word_max));
    space.blocks.push_back(fit_char_tfidf(docs, caps.char_range, caps.char_max));
    space.blocks.push_back(fit_count(docs, caps.count_range, caps.count_max));
    std::size_t offset = 0;
    for (auto& b : space.blocks) {
        b.base_offset = offset;
        offset += b.size();
    }
    space.total_dim = offset + kLinguisticCount;
    space.linguistic = LinguisticScaler::fit(linguistic_rows);
    return space;
}

FeatureSpace fit_feature_space(const std::vector<preprocess::CleanDocument>& docs,
                               const std::vector<std::string>& raw_texts, const FeatureCaps& caps,
                               const LinguisticLexicons& lex) {
    if (docs.size() != raw_texts.size()) throw std::invalid_argument("documents and raw texts are not aligned");
    return fit_feature_space(docs, compute_linguistic(raw_texts, lex), caps);
}

FeatureMatrix transform(const FeatureSpace& space, const std::vector<preprocess::CleanDocument>& docs,
                        const std::vector<LinguisticVector>& linguistic_rows) {
    if (docs.size() != linguistic_rows.size())
        throw std::invalid_argument("documents and linguistic rows are not aligned");
    std::vector<std::vector<std::pair<ColumnIndex, double>>> rows(docs.size());
    parallel_for(docs.size(), [&](std::size_t i) {
        auto& row = rows[i];
        for (const auto& b : space.blocks) append_block_row(b, docs[i], row);
        const auto z = space.linguistic.apply(linguistic_rows[i]);
        for (std::size_t j = 0; j < kLinguisticCount; ++j)
            if (z[j] != 0.0) row.emplace_back(static_cast<ColumnIndex>(space.linguistic_offset() + j), z[j]);
    });
    FeatureMatrix m(space.total_dim);
    for (auto& r : rows) m.append_row(std::move(r));
    return m;
}

FeatureMatrix transform(const FeatureSpace& space, const std::vector<preprocess::CleanDocument>& docs,
                        const std::vector<std::string>& raw_texts, const LinguisticLexicons& lex) {
    return transform(space, docs, compute_linguistic(raw_texts, lex));
}

}  // namespace revhawk::features
