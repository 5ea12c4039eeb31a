// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revhawk Contributors

#pragma once

#include <cmath>
#include <filesystem>
#include <string>

#include "revhawk/common.hpp"
#include "revhawk/matrix.hpp"

#ifndef REVHAWK_RESOURCE_DIR
#define REVHAWK_RESOURCE_DIR "resources"
#endif

namespace revhawk::testing {

inline std::filesystem::path resource_dir() { return REVHAWK_RESOURCE_DIR; }

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("revhawk-test-" + name);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

struct Dataset {
    DenseMatrix X;
    Labels y;
};

/// Two Gaussian clouds with unit variance; CG centred at +shift on every
/// axis, OR at -shift.
inline Dataset gaussian_blobs(std::size_t n, std::size_t dim, double shift, std::uint64_t seed) {
    Rng rng(seed);
    Dataset d{DenseMatrix(n, dim), {}};
    for (std::size_t i = 0; i < n; ++i) {
        const bool cg = i % 2 == 0;
        d.y.push_back(cg ? Label::CG : Label::OR);
        for (std::size_t j = 0; j < dim; ++j) d.X(i, j) = rng.normal() + (cg ? shift : -shift);
    }
    return d;
}

/// `informative` standard-normal columns decide the label through their sum
/// plus Gaussian noise; the remaining columns are pure noise.
inline Dataset informative_columns(std::size_t n, std::size_t informative, std::size_t noise, double label_noise,
                                   std::uint64_t seed) {
    Rng rng(seed);
    const std::size_t d = informative + noise;
    Dataset out{DenseMatrix(n, d), {}};
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            out.X(i, j) = rng.normal();
            if (j < informative) s += out.X(i, j);
        }
        s += label_noise * rng.normal();
        out.y.push_back(s > 0 ? Label::CG : Label::OR);
    }
    return out;
}

inline Dataset random_dataset(std::size_t n, std::size_t dim, std::uint64_t seed) {
    Rng rng(seed);
    Dataset d{DenseMatrix(n, dim), {}};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < dim; ++j) d.X(i, j) = rng.uniform(-1.0, 1.0);
        d.y.push_back(rng.uniform() < 0.5 ? Label::CG : Label::OR);
    }
    if (count_classes(d.y).generated == 0) d.y[0] = Label::CG;
    if (count_classes(d.y).original == 0) d.y[0] = Label::OR;
    return d;
}

inline double accuracy(const Labels& truth, const Labels& pred) {
    std::size_t ok = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) ok += truth[i] == pred[i];
    return static_cast<double>(ok) / static_cast<double>(truth.size());
}

}  // namespace revhawk::testing
