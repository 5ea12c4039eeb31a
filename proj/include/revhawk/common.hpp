// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revhawk Contributors

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace revhawk {

/// Review class. CG (computer-generated) is the positive class everywhere.
enum class Label : std::uint8_t { OR = 0, CG = 1 };

using Labels = std::vector<Label>;

constexpr bool is_cg(Label l) noexcept { return l == Label::CG; }
constexpr double as_target(Label l) noexcept { return l == Label::CG ? 1.0 : 0.0; }

std::string_view label_name(Label l) noexcept;

/// Case-insensitive "OR"/"CG" parse. Empty optional for anything else.
std::optional<Label> parse_label(std::string_view s);

struct ClassCounts {
    std::size_t original = 0;
    std::size_t generated = 0;

    std::size_t of(Label l) const noexcept { return is_cg(l) ? generated : original; }
    std::size_t total() const noexcept { return original + generated; }
};

ClassCounts count_classes(const Labels& labels) noexcept;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad configuration or CLI arguments.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Bad or missing input data.
class DataError : public Error {
public:
    using Error::Error;
};

/// Error raised inside a named pipeline stage.
class StageError : public Error {
public:
    StageError(std::string stage, const std::string& what, int exit_code)
        : Error("[" + stage + "] " + what), stage_(std::move(stage)), exit_code_(exit_code) {}

    const std::string& stage() const noexcept { return stage_; }
    int exit_code() const noexcept { return exit_code_; }

private:
    std::string stage_;
    int exit_code_;
};

/// Deterministic PRNG. Every draw is implemented here rather than through
/// <random> distributions so sequences do not depend on the standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) noexcept;

    std::uint64_t next_u64() noexcept;
    /// Uniform in [0, 1).
    double uniform() noexcept;
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
    /// Standard normal (Box-Muller, cached pair).
    double normal() noexcept;
    /// Uniform integer in [0, n). n must be > 0.
    std::size_t index(std::size_t n) noexcept;

    template <class T>
    void shuffle(std::vector<T>& v) noexcept {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = index(i);
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::uint64_t s_[4];
    std::optional<double> spare_;
};

/// Mixes a root seed with a stream name and indices into an independent seed.
std::uint64_t derive_seed(std::uint64_t root, std::string_view stream,
                          std::initializer_list<std::uint64_t> indices = {}) noexcept;

/// Runs body(i) for i in [0, n). Work is split over hardware threads; each
/// index must be independent so results do not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

/// 64-bit FNV-1a, used for state fingerprints.
class Fingerprint {
public:
    void add_bytes(const void* data, std::size_t n) noexcept;
    void add(std::string_view s) noexcept {
        add(static_cast<std::uint64_t>(s.size()));
        add_bytes(s.data(), s.size());
    }
    void add(std::uint64_t v) noexcept { add_bytes(&v, sizeof v); }
    void add(double v) noexcept { add_bytes(&v, sizeof v); }
    std::uint64_t value() const noexcept { return h_; }
    std::string hex() const;

private:
    std::uint64_t h_ = 1469598103934665603ULL;
};

}  // namespace revhawk
