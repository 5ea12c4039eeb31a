// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revhawk Contributors

// Writes the synthetic review table used by the tests as a CSV.

#include <CLI11.hpp>
#include <iostream>

#include "revhawk/corpus.hpp"
#include "support/synthetic_reviews.hpp"

int main(int argc, char** argv) {
    CLI::App app{"write a synthetic labeled review table"};
    revhawk::testing::SyntheticOptions o;
    std::string out;
    app.add_option("--out", out, "output CSV")->required();
    app.add_option("--rows", o.rows, "row count");
    app.add_option("--cg-fraction", o.cg_fraction, "share of CG rows");
    app.add_option("--crossover", o.crossover, "chance a sentence comes from the other style");
    app.add_option("--seed", o.seed, "generator seed");
    CLI11_PARSE(app, argc, argv);
    try {
        revhawk::corpus::save_corpus(revhawk::testing::synthetic_reviews(o), out);
    } catch (const std::exception& e) {
        std::cerr << "make_synthetic_corpus: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
