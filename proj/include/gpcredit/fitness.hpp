#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gpcredit/dataset.hpp"
#include "gpcredit/tree.hpp"

namespace gpc {

// The four training criteria. `equal` balances per-class accuracy;
// the error-based kinds add a per-class error term estimated from the
// magnitudes of incorrect outputs, by extreme range, mean or median.
enum class FitnessKind { Equal, Errors, ErrorsMean, ErrorsMedian };

inline constexpr FitnessKind kAllFitnessKinds[] = {
    FitnessKind::Equal, FitnessKind::Errors, FitnessKind::ErrorsMean,
    FitnessKind::ErrorsMedian};

// CLI/profile spellings: equal, errors, errors-mean, errors-median.
std::string fitness_kind_name(FitnessKind kind);
FitnessKind parse_fitness_kind(const std::string& name); // throws ConfigError

struct ConfusionCounts {
    long long tp = 0;
    long long fn = 0;
    long long tn = 0;
    long long fp = 0;
};

// Scaled magnitudes of incorrect outputs, one list per true class.
// A misclassified minority row has a negative output, a misclassified
// majority row a non-negative one; either way the scaled |GPout| lands
// in [0, 1).
struct ErrorSamples {
    std::vector<double> minority;
    std::vector<double> majority;

    void clear() {
        minority.clear();
        majority.clear();
    }
};

// |g| / (1 + |g|): monotone in |g|, 0 at 0, asymptote 1.
inline double scale_error(double gpout) {
    const double m = gpout < 0.0 ? -gpout : gpout;
    return m / (1.0 + m);
}

// Tallies confusion counts and error samples from precomputed outputs.
// Appends to `samples` in row order after clearing it.
void collect_outcomes_into(std::span<const double> gpout,
                           std::span<const std::uint8_t> is_minority,
                           ConfusionCounts& counts, ErrorSamples& samples);

// Evaluates the tree over the dataset and tallies. The dataset must
// contain both classes.
std::pair<ConfusionCounts, ErrorSamples> collect_outcomes(const ExprTree& tree,
                                                          const Dataset& data);

// TP/(TP+FN) + TN/(TN+FP), in [0, 2].
double f_equal(const ConfusionCounts& c);

// Per-class error estimators over scaled magnitudes; empty list -> 0.
double err_range(std::span<const double> samples);  // (max + min) / 2
double err_mean(std::span<const double> samples);
double err_median(std::span<const double> samples);

// Dispatches on kind: `equal` is f_equal; the error-based kinds are
// f_equal + (1 - Err_min) + (1 - Err_maj) with the matching estimator,
// in [0, 4].
double fitness_value(FitnessKind kind, const ConfusionCounts& c,
                     const ErrorSamples& e);

// Convenience: evaluate + tally + score in one call.
double fitness_of(FitnessKind kind, const ExprTree& tree, const Dataset& data);

struct Metrics {
    double tp_rate = 0.0;
    double tn_rate = 0.0;
    double accuracy = 0.0;
};

Metrics metrics_from_counts(const ConfusionCounts& c);

} // namespace gpc
