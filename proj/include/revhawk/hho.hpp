// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revhawk Contributors

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <vector>

#include "revhawk/common.hpp"
#include "revhawk/matrix.hpp"

namespace revhawk::hho {

struct HHOParams {
    std::size_t n_hawks = 30;
    std::size_t n_iterations = 50;
    double levy_beta = 1.5;
    /// Search box. A single entry applies to every dimension.
    std::vector<double> lower{-1.0};
    std::vector<double> upper{1.0};
    std::uint64_t seed = 0;

    double lower_at(std::size_t d) const { return lower.size() == 1 ? lower[0] : lower.at(d); }
    double upper_at(std::size_t d) const { return upper.size() == 1 ? upper[0] : upper.at(d); }

    /// Throws std::invalid_argument when a constraint is violated.
    void validate(std::size_t dim) const;
};

/// Identifies one objective evaluation: the iteration that produced the
/// candidate (0 = initialization) and the hawk slot.
struct EvalContext {
    std::size_t iteration = 0;
    std::size_t hawk = 0;
};

/// Lower is better. Non-finite values are treated as +infinity. Must be safe
/// to call concurrently.
using Objective = std::function<double(std::span<const double>, const EvalContext&)>;

struct Hawk {
    std::vector<double> position;
    double fitness = 0.0;
    EvalContext origin;
};

struct HawkPopulation {
    std::vector<Hawk> hawks;
    Hawk rabbit;                  // best ever observed
    std::size_t iteration = 0;    // completed steps
    std::vector<double> history;  // rabbit fitness after each step
};

/// Which rule moved a hawk in the last step.
enum class Phase {
    perch_on_random_hawk,
    perch_near_family,
    soft_besiege,
    hard_besiege,
    soft_besiege_dives,
    hard_besiege_dives,
};

/// E = 2 * E0 * (1 - t / T).
double escaping_energy(double e0, std::size_t t, std::size_t total);

/// Mantegna scale for a Levy-stable step with index beta.
double levy_sigma(double beta);

/// 0.01 * u / |v|^(1/beta) per component, u ~ N(0, sigma^2), v ~ N(0, 1).
std::vector<double> levy_step(std::size_t dim, double beta, Rng& rng);

/// Position updates for each phase, written to `out`. Scalars follow the
/// usual naming: r1..r4 uniform draws, J = 2(1 - r5) the jump strength.
namespace moves {
void perch_on_random_hawk(std::span<double> out, std::span<const double> x, std::span<const double> other,
                          double r1, double r2);
void perch_near_family(std::span<double> out, std::span<const double> rabbit, std::span<const double> mean,
                       const HHOParams& params, double r3, double r4);
void soft_besiege(std::span<double> out, std::span<const double> x, std::span<const double> rabbit, double energy,
                  double jump);
void hard_besiege(std::span<double> out, std::span<const double> x, std::span<const double> rabbit, double energy);
/// Dive target Y = rabbit - E |J rabbit - anchor| (anchor = x for soft, mean for hard).
void dive(std::span<double> out, std::span<const double> anchor, std::span<const double> rabbit, double energy,
          double jump);
}  // namespace moves

/// Uniform positions within bounds, evaluated; rabbit is the best hawk.
HawkPopulation initialize(const Objective& objective, std::size_t dim, const HHOParams& params);

/// One HHO iteration: every hawk moves by its phase rule against a snapshot
/// of the population, positions are clamped, the rabbit is updated greedily,
/// and the history grows by one. Random draws for hawk i in step t come from
/// a substream of (seed, t, i).
HawkPopulation hho_step(HawkPopulation pop, const Objective& objective, const HHOParams& params,
                        std::vector<Phase>* phases = nullptr);

struct MinimizeResult {
    std::vector<double> position;
    double fitness = 0.0;
    EvalContext origin;
    std::vector<double> history;
};

MinimizeResult minimize(const Objective& objective, std::size_t dim, const HHOParams& params);
MinimizeResult minimize(const std::function<double(std::span<const double>)>& objective, std::size_t dim,
                        const HHOParams& params);

// ---------------------------------------------------------------------------
// Binary feature selection

class FeatureMask {
public:
    FeatureMask() = default;
    explicit FeatureMask(std::vector<std::uint8_t> bits);

    std::size_t size() const noexcept { return bits_.size(); }
    std::size_t selected_count() const noexcept { return selected_; }
    bool operator[](std::size_t i) const noexcept { return bits_[i] != 0; }
    const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }
    std::vector<ColumnIndex> selected_columns() const;

    friend bool operator==(const FeatureMask&, const FeatureMask&) = default;

private:
    std::vector<std::uint8_t> bits_;
    std::size_t selected_ = 0;
};

/// File layout: "dimension <D> selected <K>" header line, then D chars of 0/1.
void save_mask(const FeatureMask& mask, const std::filesystem::path& path);
FeatureMask load_mask(const std::filesystem::path& path);

double sigmoid(double x) noexcept;

/// Bit j is set when threshold_j < S(x_j). An all-zero result gets the bit
/// with the largest S(x_j) forced on (first such index on ties).
FeatureMask binarize(std::span<const double> position, std::span<const double> thresholds);
FeatureMask binarize(std::span<const double> position, Rng& threshold_rng);

/// Validation error of a classifier restricted to a feature subset.
class SubsetEvaluator {
public:
    virtual ~SubsetEvaluator() = default;
    virtual std::size_t dimension() const = 0;
    virtual double error_rate(const FeatureMask& mask) const = 0;
};

struct KnnEvaluatorParams {
    std::size_t k = 5;
    double holdout_fraction = 0.2;
    std::size_t max_rows = 2000;
};

/// k-NN (Euclidean over selected columns, majority vote) on a stratified
/// holdout. The subsample and the holdout split are fixed at construction.
class KnnHoldoutEvaluator final : public SubsetEvaluator {
public:
    /// Throws DataError when either side of the split holds a single class.
    KnnHoldoutEvaluator(const FeatureMatrix& X, const Labels& y, const KnnEvaluatorParams& params,
                        std::uint64_t seed);

    std::size_t dimension() const override { return train_.cols(); }
    double error_rate(const FeatureMask& mask) const override;

    std::size_t train_rows() const noexcept { return train_.rows(); }
    std::size_t validation_rows() const noexcept { return valid_.rows(); }

private:
    FeatureMatrix train_;
    FeatureMatrix valid_;
    Labels train_y_;
    Labels valid_y_;
    std::size_t k_;
};

struct FitnessParams {
    double alpha = 0.99;
    void validate() const;
};

/// alpha * error + (1 - alpha) * selected / D.
double subset_fitness(const FeatureMask& mask, const SubsetEvaluator& evaluator, const FitnessParams& fp);

struct SelectionResult {
    FeatureMask mask;
    double fitness = 0.0;
    std::vector<double> history;
};

/// Binary HHO over [-4, 4]^D. Each (iteration, hawk) evaluation draws its
/// binarization thresholds from a frozen substream, so a candidate and its
/// dive alternatives are compared under the same draws. The mask of the best
/// hawk ever observed is returned.
SelectionResult select_features(const SubsetEvaluator& evaluator, HHOParams params, const FitnessParams& fp);

SelectionResult select_features(const FeatureMatrix& X, const Labels& y, const HHOParams& params,
                                const FitnessParams& fp, const KnnEvaluatorParams& knn = {});

/// Two-column iteration,best_fitness file with a header row.
void write_convergence(const std::vector<double>& history, const std::filesystem::path& path,
                       const std::string& comment = {});

}  // namespace revhawk::hho
