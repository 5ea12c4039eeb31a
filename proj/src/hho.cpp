// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revhawk Contributors

#include "revhawk/hho.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "revhawk/corpus.hpp"
#include "revhawk/neighbors.hpp"

namespace revhawk::hho {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double safe_eval(const Objective& f, std::span<const double> x, const EvalContext& ctx) {
    const double v = f(x, ctx);
    return std::isfinite(v) ? v : kInf;
}

void clamp_to_bounds(std::span<double> x, const HHOParams& p) {
    for (std::size_t d = 0; d < x.size(); ++d) x[d] = std::clamp(x[d], p.lower_at(d), p.upper_at(d));
}

}  // namespace

void HHOParams::validate(std::size_t dim) const {
    if (n_hawks < 2) throw std::invalid_argument("HHO needs at least 2 hawks");
    if (n_iterations < 1) throw std::invalid_argument("HHO needs at least 1 iteration");
    if (!(levy_beta > 1.0 && levy_beta <= 2.0)) throw std::invalid_argument("levy beta must lie in (1, 2]");
    if (dim < 1) throw std::invalid_argument("HHO dimension must be >= 1");
    if (lower.empty() || upper.empty()) throw std::invalid_argument("HHO bounds are empty");
    if ((lower.size() != 1 && lower.size() != dim) || (upper.size() != 1 && upper.size() != dim))
        throw std::invalid_argument("HHO bounds do not match the dimension");
    for (std::size_t d = 0; d < dim; ++d)
        if (!(lower_at(d) < upper_at(d))) throw std::invalid_argument("HHO lower bound must be below upper bound");
}

double escaping_energy(double e0, std::size_t t, std::size_t total) {
    if (total < 1) throw std::invalid_argument("total iterations must be >= 1");
    if (t > total) throw std::invalid_argument("iteration exceeds total iterations");
    return 2.0 * e0 * (1.0 - static_cast<double>(t) / static_cast<double>(total));
}

double levy_sigma(double beta) {
    const double num = std::tgamma(1.0 + beta) * std::sin(std::numbers::pi * beta / 2.0);
    const double den = std::tgamma((1.0 + beta) / 2.0) * beta * std::pow(2.0, (beta - 1.0) / 2.0);
    return std::pow(num / den, 1.0 / beta);
}

std::vector<double> levy_step(std::size_t dim, double beta, Rng& rng) {
    const double sigma = levy_sigma(beta);
    std::vector<double> step(dim);
    for (auto& s : step) {
        const double u = rng.normal() * sigma;
        const double v = rng.normal();
        s = 0.01 * u / std::pow(std::abs(v), 1.0 / beta);
    }
    return step;
}

namespace moves {

void perch_on_random_hawk(std::span<double> out, std::span<const double> x, std::span<const double> other,
                          double r1, double r2) {
    for (std::size_t d = 0; d < out.size(); ++d) out[d] = other[d] - r1 * std::abs(other[d] - 2.0 * r2 * x[d]);
}

void perch_near_family(std::span<double> out, std::span<const double> rabbit, std::span<const double> mean,
                       const HHOParams& params, double r3, double r4) {
    for (std::size_t d = 0; d < out.size(); ++d) {
        const double lb = params.lower_at(d), ub = params.upper_at(d);
        out[d] = (rabbit[d] - mean[d]) - r3 * (lb + r4 * (ub - lb));
    }
}

void soft_besiege(std::span<double> out, std::span<const double> x, std::span<const double> rabbit, double energy,
                  double jump) {
    for (std::size_t d = 0; d < out.size(); ++d)
        out[d] = (rabbit[d] - x[d]) - energy * std::abs(jump * rabbit[d] - x[d]);
}

void hard_besiege(std::span<double> out, std::span<const double> x, std::span<const double> rabbit, double energy) {
    for (std::size_t d = 0; d < out.size(); ++d) out[d] = rabbit[d] - energy * std::abs(rabbit[d] - x[d]);
}

void dive(std::span<double> out, std::span<const double> anchor, std::span<const double> rabbit, double energy,
          double jump) {
    for (std::size_t d = 0; d < out.size(); ++d) out[d] = rabbit[d] - energy * std::abs(jump * rabbit[d] - anchor[d]);
}

}  // namespace moves

HawkPopulation initialize(const Objective& objective, std::size_t dim, const HHOParams& params) {
    params.validate(dim);
    HawkPopulation pop;
    pop.hawks.resize(params.n_hawks);
    for (std::size_t i = 0; i < params.n_hawks; ++i) {
        Rng rng(derive_seed(params.seed, "hho-init", {i}));
        auto& h = pop.hawks[i];
        h.position.resize(dim);
        for (std::size_t d = 0; d < dim; ++d) h.position[d] = rng.uniform(params.lower_at(d), params.upper_at(d));
        h.origin = {0, i};
    }
    parallel_for(params.n_hawks, [&](std::size_t i) {
        pop.hawks[i].fitness = safe_eval(objective, pop.hawks[i].position, pop.hawks[i].origin);
    });
    pop.rabbit = pop.hawks[0];
    for (const auto& h : pop.hawks)
        if (h.fitness < pop.rabbit.fitness) pop.rabbit = h;
    return pop;
}

HawkPopulation hho_step(HawkPopulation pop, const Objective& objective, const HHOParams& params,
                        std::vector<Phase>* phases) {
    const std::size_t n = pop.hawks.size();
    if (n < 2) throw std::invalid_argument("population needs at least 2 hawks");
    const std::size_t dim = pop.rabbit.position.size();
    const std::size_t t = pop.iteration;
    const std::size_t total = std::max(params.n_iterations, t + 1);

    const std::vector<Hawk> snapshot = pop.hawks;
    const Hawk rabbit = pop.rabbit;
    std::vector<double> mean(dim, 0.0);
    for (const auto& h : snapshot)
        for (std::size_t d = 0; d < dim; ++d) mean[d] += h.position[d];
    for (auto& m : mean) m /= static_cast<double>(n);

    std::vector<Phase> phase(n);
    parallel_for(n, [&](std::size_t i) {
        Rng rng(derive_seed(params.seed, "hho-step", {t, i}));
        const EvalContext ctx{t + 1, i};
        const Hawk& self = snapshot[i];
        Hawk& out = pop.hawks[i];
        std::vector<double> next(dim);

        const double e0 = 2.0 * rng.uniform() - 1.0;
        const double energy = escaping_energy(e0, t, total);

        if (std::abs(energy) >= 1.0) {
            const double q = rng.uniform();
            if (q >= 0.5) {
                const std::size_t other = rng.index(n);
                const double r1 = rng.uniform(), r2 = rng.uniform();
                moves::perch_on_random_hawk(next, self.position, snapshot[other].position, r1, r2);
                phase[i] = Phase::perch_on_random_hawk;
            } else {
                const double r3 = rng.uniform(), r4 = rng.uniform();
                moves::perch_near_family(next, rabbit.position, mean, params, r3, r4);
                phase[i] = Phase::perch_near_family;
            }
            clamp_to_bounds(next, params);
            out.position = std::move(next);
            out.fitness = safe_eval(objective, out.position, ctx);
            out.origin = ctx;
            return;
        }

        const double r = rng.uniform();
        const double jump = 2.0 * (1.0 - rng.uniform());
        if (r >= 0.5) {
            if (std::abs(energy) >= 0.5) {
                moves::soft_besiege(next, self.position, rabbit.position, energy, jump);
                phase[i] = Phase::soft_besiege;
            } else {
                moves::hard_besiege(next, self.position, rabbit.position, energy);
                phase[i] = Phase::hard_besiege;
            }
            clamp_to_bounds(next, params);
            out.position = std::move(next);
            out.fitness = safe_eval(objective, out.position, ctx);
            out.origin = ctx;
            return;
        }

        // Progressive rapid dives: accept Y, else Levy-perturbed Z, only on improvement.
        const bool soft = std::abs(energy) >= 0.5;
        phase[i] = soft ? Phase::soft_besiege_dives : Phase::hard_besiege_dives;
        moves::dive(next, soft ? std::span<const double>(self.position) : std::span<const double>(mean),
                    rabbit.position, energy, jump);
        clamp_to_bounds(next, params);
        const double fy = safe_eval(objective, next, ctx);
        if (fy < self.fitness) {
            out.position = std::move(next);
            out.fitness = fy;
            out.origin = ctx;
            return;
        }
        const auto levy = levy_step(dim, params.levy_beta, rng);
        std::vector<double> z(dim);
        for (std::size_t d = 0; d < dim; ++d) z[d] = next[d] + rng.uniform() * levy[d];
        clamp_to_bounds(z, params);
        const double fz = safe_eval(objective, z, ctx);
        if (fz < self.fitness) {
            out.position = std::move(z);
            out.fitness = fz;
            out.origin = ctx;
        }
    });

    for (const auto& h : pop.hawks)
        if (h.fitness < pop.rabbit.fitness) pop.rabbit = h;
    pop.iteration = t + 1;
    pop.history.push_back(pop.rabbit.fitness);
    if (phases) *phases = std::move(phase);
    return pop;
}

MinimizeResult minimize(const Objective& objective, std::size_t dim, const HHOParams& params) {
    auto pop = initialize(objective, dim, params);
    for (std::size_t t = 0; t < params.n_iterations; ++t) pop = hho_step(std::move(pop), objective, params);
    return {pop.rabbit.position, pop.rabbit.fitness, pop.rabbit.origin, pop.history};
}

MinimizeResult minimize(const std::function<double(std::span<const double>)>& objective, std::size_t dim,
                        const HHOParams& params) {
    return minimize([&](std::span<const double> x, const EvalContext&) { return objective(x); }, dim, params);
}

// ---------------------------------------------------------------------------

FeatureMask::FeatureMask(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (auto& b : bits_) {
        b = b ? 1 : 0;
        selected_ += b;
    }
}

std::vector<ColumnIndex> FeatureMask::selected_columns() const {
    std::vector<ColumnIndex> cols;
    cols.reserve(selected_);
    for (std::size_t j = 0; j < bits_.size(); ++j)
        if (bits_[j]) cols.push_back(static_cast<ColumnIndex>(j));
    return cols;
}

void save_mask(const FeatureMask& mask, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write mask file: " + path.string());
    out << "dimension " << mask.size() << " selected " << mask.selected_count() << '\n';
    for (std::size_t j = 0; j < mask.size(); ++j) out << (mask[j] ? '1' : '0');
    out << '\n';
}

FeatureMask load_mask(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open mask file: " + path.string());
    std::string word1, word2;
    std::size_t dim = 0, selected = 0;
    in >> word1 >> dim >> word2 >> selected;
    if (!in || word1 != "dimension" || word2 != "selected") throw DataError("malformed mask header in " + path.string());
    std::string bits;
    in >> bits;
    if (bits.size() != dim) throw DataError("mask length does not match its dimension header");
    std::vector<std::uint8_t> v(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        if (bits[j] != '0' && bits[j] != '1') throw DataError("mask contains a non-binary character");
        v[j] = bits[j] == '1';
    }
    FeatureMask mask(std::move(v));
    if (mask.selected_count() != selected) throw DataError("mask selected count does not match its header");
    return mask;
}

double sigmoid(double x) noexcept { return 1.0 / (1.0 + std::exp(-x)); }

FeatureMask binarize(std::span<const double> position, std::span<const double> thresholds) {
    if (position.size() != thresholds.size()) throw std::invalid_argument("threshold count does not match position");
    std::vector<std::uint8_t> bits(position.size());
    bool any = false;
    for (std::size_t j = 0; j < position.size(); ++j) {
        bits[j] = thresholds[j] < sigmoid(position[j]);
        any = any || bits[j];
    }
    if (!any && !bits.empty()) {
        const auto best = std::max_element(position.begin(), position.end()) - position.begin();
        bits[static_cast<std::size_t>(best)] = 1;
    }
    return FeatureMask(std::move(bits));
}

FeatureMask binarize(std::span<const double> position, Rng& threshold_rng) {
    std::vector<double> thresholds(position.size());
    for (auto& t : thresholds) t = threshold_rng.uniform();
    return binarize(position, thresholds);
}

KnnHoldoutEvaluator::KnnHoldoutEvaluator(const FeatureMatrix& X, const Labels& y, const KnnEvaluatorParams& params,
                                         std::uint64_t seed)
    : k_(params.k) {
    if (X.rows() != y.size()) throw std::invalid_argument("feature rows and labels are not aligned");
    if (params.k < 1) throw std::invalid_argument("k-NN evaluator needs k >= 1");
    const auto counts = count_classes(y);
    if (counts.original < 2 || counts.generated < 2)
        throw DataError("fitness evaluator needs at least two rows of each class");

    std::vector<std::size_t> pool(y.size());
    for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
    if (y.size() > params.max_rows) {
        const double keep = static_cast<double>(params.max_rows) / static_cast<double>(y.size());
        pool = corpus::stratified_split(y, keep, derive_seed(seed, "knn-subsample")).test;
    }
    Labels pool_y;
    for (auto i : pool) pool_y.push_back(y[i]);
    auto split = corpus::stratified_split(pool_y, params.holdout_fraction, derive_seed(seed, "knn-holdout"));

    std::vector<std::size_t> tr, va;
    for (auto i : split.train) {
        tr.push_back(pool[i]);
        train_y_.push_back(pool_y[i]);
    }
    for (auto i : split.test) {
        va.push_back(pool[i]);
        valid_y_.push_back(pool_y[i]);
    }
    const auto tc = count_classes(train_y_);
    if (tc.original == 0 || tc.generated == 0) throw DataError("fitness training split holds a single class");
    train_ = X.select_rows(tr);
    valid_ = X.select_rows(va);
}

double KnnHoldoutEvaluator::error_rate(const FeatureMask& mask) const {
    if (mask.size() != train_.cols()) throw std::invalid_argument("mask dimension does not match features");
    NeighborIndex index(train_, mask.bits());
    std::size_t wrong = 0;
    for (std::size_t r = 0; r < valid_.rows(); ++r) {
        const auto nn = index.query(valid_.row(r), k_);
        std::size_t cg = 0;
        for (auto j : nn) cg += is_cg(train_y_[j]);
        // Majority vote; an even split goes to the nearest neighbour's class.
        Label pred;
        if (2 * cg > nn.size())
            pred = Label::CG;
        else if (2 * cg < nn.size())
            pred = Label::OR;
        else
            pred = train_y_[nn.front()];
        wrong += pred != valid_y_[r];
    }
    return static_cast<double>(wrong) / static_cast<double>(valid_.rows());
}

void FitnessParams::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("fitness alpha must lie in (0, 1)");
}

double subset_fitness(const FeatureMask& mask, const SubsetEvaluator& evaluator, const FitnessParams& fp) {
    fp.validate();
    if (mask.size() != evaluator.dimension()) throw std::invalid_argument("mask dimension does not match evaluator");
    const double error = evaluator.error_rate(mask);
    const double ratio = static_cast<double>(mask.selected_count()) / static_cast<double>(mask.size());
    return fp.alpha * error + (1.0 - fp.alpha) * ratio;
}

SelectionResult select_features(const SubsetEvaluator& evaluator, HHOParams params, const FitnessParams& fp) {
    fp.validate();
    const std::size_t dim = evaluator.dimension();
    params.lower = {-4.0};
    params.upper = {4.0};
    const std::uint64_t seed = params.seed;
    auto mask_for = [seed](std::span<const double> x, const EvalContext& ctx) {
        Rng draws(derive_seed(seed, "hho-binarize", {ctx.iteration, ctx.hawk}));
        return binarize(x, draws);
    };
    Objective objective = [&](std::span<const double> x, const EvalContext& ctx) {
        return subset_fitness(mask_for(x, ctx), evaluator, fp);
    };
    auto best = minimize(objective, dim, params);
    SelectionResult result;
    result.mask = mask_for(best.position, best.origin);
    result.fitness = best.fitness;
    result.history = std::move(best.history);
    return result;
}

SelectionResult select_features(const FeatureMatrix& X, const Labels& y, const HHOParams& params,
                                const FitnessParams& fp, const KnnEvaluatorParams& knn) {
    KnnHoldoutEvaluator evaluator(X, y, knn, derive_seed(params.seed, "fitness-split"));
    return select_features(evaluator, params, fp);
}

void write_convergence(const std::vector<double>& history, const std::filesystem::path& path,
                       const std::string& comment) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write convergence file: " + path.string());
    if (!comment.empty()) out << "# " << comment << '\n';
    out << "iteration,best_fitness\n";
    out.precision(17);
    for (std::size_t t = 0; t < history.size(); ++t) out << (t + 1) << ',' << history[t] << '\n';
}

}  // namespace revhawk::hho
