// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revhawk Contributors

#include <doctest.h>

#include "revhawk/neighbors.hpp"
#include "revhawk/resample.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace revhawk;
using namespace revhawk::resample;

namespace {

DenseMatrix rows(std::initializer_list<std::initializer_list<double>> r) {
    DenseMatrix m;
    for (auto row : r) m.append_row(std::vector<double>(row));
    return m;
}

}  // namespace

TEST_CASE("smote geometry") {
    Rng rng(1);
    auto diag = smote(rows({{0, 0}, {1, 1}}), 50, 1, rng);
    REQUIRE(diag.rows() == 50);
    for (std::size_t i = 0; i < diag.rows(); ++i) {
        CHECK(diag(i, 0) == diag(i, 1));
        CHECK((diag(i, 0) >= 0.0 && diag(i, 0) <= 1.0));
    }

    auto same = smote(rows({{2, 3}, {2, 3}, {2, 3}}), 10, 2, rng);
    for (std::size_t i = 0; i < same.rows(); ++i) {
        CHECK(same(i, 0) == 2.0);
        CHECK(same(i, 1) == 3.0);
    }

    auto tri = rows({{0, 0, 1}, {4, 1, -2}, {1, 5, 0.5}});
    auto syn = smote(tri, 100, 2, rng);
    REQUIRE(syn.rows() == 100);
    for (std::size_t i = 0; i < syn.rows(); ++i) CHECK(oracle::on_some_segment(syn.row(i), tri, 1e-9));

    CHECK_THROWS_AS(smote(rows({{1, 1}}), 5, 1, rng), DataError);
    CHECK_THROWS(smote(tri, 5, 3, rng));
}

TEST_CASE("enn edits") {
    SUBCASE("lone point in the other class is dropped") {
        auto X = rows({{0, 0}, {1, 0}, {0, 1}, {1, 1}, {0.5, 0.5}});
        Labels y{Label::OR, Label::OR, Label::OR, Label::OR, Label::CG};
        auto kept = enn(X, y, 3);
        CHECK(kept == std::vector<std::size_t>{0, 1, 2, 3});
    }
    SUBCASE("separated clusters are untouched") {
        auto d = testing::gaussian_blobs(40, 2, 20.0, 4);
        CHECK(enn(d.X, d.y, 3).size() == 40);
    }
    SUBCASE("matches the brute-force oracle") {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            auto d = testing::random_dataset(20, 2, seed);
            CHECK(enn(d.X, d.y, 3) == oracle::enn(d.X, d.y, 3));
        }
    }
    CHECK_THROWS(enn(rows({{0}, {1}}), {Label::OR, Label::CG}, 2));
}

TEST_CASE("smoteenn composition") {
    SUBCASE("balanced input reduces to enn") {
        auto d = testing::gaussian_blobs(60, 3, 0.5, 2);
        auto r = smoteenn(d.X, d.y, {.seed = 1});
        CHECK(r.report.synthetic == 0);
        auto kept = enn(d.X, d.y, 3);
        REQUIRE(r.X.rows() == kept.size());
        CHECK(r.source_row == kept);
        CHECK(r.removed_count == 60 - kept.size());
    }
    SUBCASE("imbalanced input") {
        auto d = testing::gaussian_blobs(40, 2, 1.0, 3);
        DenseMatrix X;
        Labels y;
        std::size_t cg = 0;
        for (std::size_t i = 0; i < d.X.rows(); ++i) {
            if (is_cg(d.y[i]) && cg++ >= 10) continue;
            X.append_row(d.X.row(i));
            y.push_back(d.y[i]);
        }
        DenseMatrix minority;
        for (std::size_t i = 0; i < X.rows(); ++i)
            if (is_cg(y[i])) minority.append_row(X.row(i));
        auto r = smoteenn(X, y, {.seed = 5});
        CHECK(r.report.synthetic == 10);
        CHECK(r.report.synthetic_class == Label::CG);
        CHECK(r.report.input.generated == 10);
        CHECK(r.report.input.original == 20);
        CHECK(r.report.output.total() == r.X.rows());
        CHECK(r.report.removed.total() == r.removed_count);
        for (std::size_t i = 0; i < r.X.rows(); ++i) {
            if (r.provenance[i] == Provenance::synthetic) {
                CHECK(is_cg(r.y[i]));
                CHECK(oracle::on_some_segment(r.X.row(i), minority, 1e-9));
            } else {
                CHECK(r.X.row(i)[0] == X(r.source_row[i], 0));
                CHECK(r.y[i] == y[r.source_row[i]]);
            }
        }
        const auto& out = r.report.output;
        const double in_ratio = 10.0 / 20.0;
        const double out_ratio = static_cast<double>(std::min(out.original, out.generated)) /
                                 static_cast<double>(std::max(out.original, out.generated));
        CHECK(out_ratio >= in_ratio);

        auto again = smoteenn(X, y, {.seed = 5});
        CHECK(again.X == r.X);
    }
    ResampleParams bad;
    bad.enn_k = 2;
    CHECK_THROWS(bad.validate());
}

TEST_CASE("neighbour index agrees with direct distances") {
    auto d = testing::random_dataset(50, 6, 9);
    for (std::size_t i = 0; i < 50; i += 7)
        for (std::size_t j = 0; j < 6; ++j)
            if ((i + j) % 3 == 0) d.X(i, j) = 0.0;
    auto X = to_sparse(d.X);
    NeighborIndex idx(X);
    auto dist = idx.squared_distances(X.row(3));
    for (std::size_t j = 0; j < 50; ++j)
        CHECK(dist[j] == doctest::Approx(oracle::squared_distance(d.X.row(3), d.X.row(j))).epsilon(1e-12));
    auto nn = idx.query(X.row(3), 4, 3);
    CHECK(nn.size() == 4);
    for (auto n : nn) CHECK(n != 3);
    for (std::size_t k = 1; k < nn.size(); ++k) CHECK(dist[nn[k - 1]] <= dist[nn[k]]);
}
