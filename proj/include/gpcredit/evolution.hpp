#pragma once

#include <cstdint>
#include <vector>

#include "gpcredit/dataset.hpp"
#include "gpcredit/fitness.hpp"
#include "gpcredit/rng.hpp"
#include "gpcredit/tree.hpp"

namespace gpc {

struct EvolutionParams {
    int population_size = 500;
    int generations = 1000;
    double p_crossover = 0.9;
    double p_mutation = 0.1;
    int tournament_size = 3;
    int max_depth = 17;
    int init_depth_min = 2;
    int init_depth_max = 6;
    int elitism_count = 1;
    std::uint64_t seed = 1;
    std::int32_t n_features = 0; // 0 = derive from the training set

    void validate() const; // throws ConfigError
};

struct Individual {
    ExprTree tree;
    double fitness = 0.0;
    bool evaluated = false;
};

struct GenerationStats {
    double best = 0.0;
    double mean = 0.0;
};

// One evolution run: the best-of-run tree, its training fitness, the
// per-generation (best, mean) trace with entry 0 describing the initial
// population, and test metrics filled in by the evaluation layer.
struct RunRecord {
    ExprTree best_tree;
    double best_fitness = 0.0;
    std::vector<GenerationStats> train_fitness_trace;
    Metrics test_metrics;
    std::uint64_t seed = 0;
    FitnessKind fitness_kind = FitnessKind::Equal;
};

// Random full tree: functions down to exactly `depth`, then terminals.
// Terminals are uniform over the features plus one ephemeral-constant
// slot; constants are uniform in [-1, 1].
ExprTree full_tree(int depth, std::int32_t n_features, RngState& rng);

// Random grow tree: each position below the root draws uniformly over
// the four functions and the terminal symbols, bounded by max_depth.
ExprTree grow_tree(int max_depth, std::int32_t n_features, RngState& rng);

// Coin-flips full vs grow and draws a depth uniformly from the init range.
ExprTree generate_tree(const EvolutionParams& params, RngState& rng);

// Ramped half-and-half. Method and depth depend only on the individual's
// index (full/grow alternating, depths cycling through the init range),
// so with a fixed seed a larger population extends a smaller one.
std::vector<Individual> init_population(const EvolutionParams& params,
                                        RngState& rng);

// Samples k individuals uniformly with replacement and returns the best;
// ties go to the earliest-sampled. Draws exactly k indices from rng.
const Individual& tournament_select(const std::vector<Individual>& pop,
                                    int k, RngState& rng);

// Replaces a uniformly chosen subtree of `a` with a uniformly chosen
// subtree of `b` (one index draw per parent, `a` first). Offspring deeper
// than params.max_depth fall back to a copy of `a`. Parents untouched.
ExprTree subtree_crossover(const ExprTree& a, const ExprTree& b,
                           const EvolutionParams& params, RngState& rng);

// Replaces a uniformly chosen subtree with a fresh grow tree of depth
// at most params.init_depth_max, with the same depth-limit fallback.
ExprTree subtree_mutation(const ExprTree& a, const EvolutionParams& params,
                          RngState& rng);

// Generational loop: elitism, then tournament-selected parents bred by
// crossover (p_crossover) or mutation (p_mutation), mutually exclusive
// per offspring. All breeding decisions consume the run's single RNG
// stream in a fixed order; fitness evaluation is pure and may run on
// `jobs` worker threads without affecting any result.
RunRecord evolve(const Dataset& train, FitnessKind kind,
                 const EvolutionParams& params, int jobs = 1);

} // namespace gpc
