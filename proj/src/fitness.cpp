#include "gpcredit/fitness.hpp"

#include <algorithm>

#include "gpcredit/errors.hpp"

namespace gpc {

std::string fitness_kind_name(FitnessKind kind) {
    switch (kind) {
    case FitnessKind::Equal: return "equal";
    case FitnessKind::Errors: return "errors";
    case FitnessKind::ErrorsMean: return "errors-mean";
    case FitnessKind::ErrorsMedian: return "errors-median";
    }
    return "?";
}

FitnessKind parse_fitness_kind(const std::string& name) {
    for (FitnessKind k : kAllFitnessKinds) {
        if (name == fitness_kind_name(k)) return k;
    }
    throw ConfigError("unknown fitness '" + name +
                      "' (expected equal, errors, errors-mean or errors-median)");
}

void collect_outcomes_into(std::span<const double> gpout,
                           std::span<const std::uint8_t> is_minority,
                           ConfusionCounts& counts, ErrorSamples& samples) {
    counts = ConfusionCounts{};
    samples.clear();
    for (std::size_t i = 0; i < gpout.size(); ++i) {
        const bool predicted_minority = predicts_minority(gpout[i]);
        if (is_minority[i]) {
            if (predicted_minority) {
                ++counts.tp;
            } else {
                ++counts.fn;
                samples.minority.push_back(scale_error(gpout[i]));
            }
        } else {
            if (predicted_minority) {
                ++counts.fp;
                samples.majority.push_back(scale_error(gpout[i]));
            } else {
                ++counts.tn;
            }
        }
    }
}

std::pair<ConfusionCounts, ErrorSamples> collect_outcomes(const ExprTree& tree,
                                                          const Dataset& data) {
    if (data.n_rows() == 0 || !data.has_both_classes()) {
        throw ConfigError("outcome collection requires a non-empty dataset "
                          "with both classes present");
    }
    TreeEvaluator evaluator(data.n_rows());
    std::vector<double> gpout(data.n_rows());
    evaluator.eval(tree, data.features, gpout);
    ConfusionCounts counts;
    ErrorSamples samples;
    collect_outcomes_into(gpout, data.is_minority, counts, samples);
    return {counts, samples};
}

double f_equal(const ConfusionCounts& c) {
    if (c.tp + c.fn == 0 || c.tn + c.fp == 0) {
        throw ConfigError("f_equal undefined: a class has no examples");
    }
    return static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn) +
           static_cast<double>(c.tn) / static_cast<double>(c.tn + c.fp);
}

double err_range(std::span<const double> samples) {
    if (samples.empty()) return 0.0;
    const auto [mn, mx] = std::minmax_element(samples.begin(), samples.end());
    return (*mx + *mn) / 2.0;
}

double err_mean(std::span<const double> samples) {
    if (samples.empty()) return 0.0;
    double sum = 0.0;
    for (double v : samples) sum += v;
    return sum / static_cast<double>(samples.size());
}

double err_median(std::span<const double> samples) {
    if (samples.empty()) return 0.0;
    thread_local std::vector<double> scratch;
    scratch.assign(samples.begin(), samples.end());
    const std::size_t m = scratch.size();
    const std::size_t mid = m / 2;
    std::nth_element(scratch.begin(), scratch.begin() + mid, scratch.end());
    const double upper = scratch[mid];
    if (m % 2 == 1) return upper;
    const double lower = *std::max_element(scratch.begin(), scratch.begin() + mid);
    return (lower + upper) / 2.0;
}

double fitness_value(FitnessKind kind, const ConfusionCounts& c,
                     const ErrorSamples& e) {
    const double base = f_equal(c);
    switch (kind) {
    case FitnessKind::Equal:
        return base;
    case FitnessKind::Errors:
        return base + (1.0 - err_range(e.minority)) + (1.0 - err_range(e.majority));
    case FitnessKind::ErrorsMean:
        return base + (1.0 - err_mean(e.minority)) + (1.0 - err_mean(e.majority));
    case FitnessKind::ErrorsMedian:
        return base + (1.0 - err_median(e.minority)) +
               (1.0 - err_median(e.majority));
    }
    return 0.0;
}

double fitness_of(FitnessKind kind, const ExprTree& tree, const Dataset& data) {
    auto [counts, samples] = collect_outcomes(tree, data);
    return fitness_value(kind, counts, samples);
}

Metrics metrics_from_counts(const ConfusionCounts& c) {
    if (c.tp + c.fn == 0 || c.tn + c.fp == 0) {
        throw ConfigError("metrics undefined: a class has no examples");
    }
    Metrics m;
    m.tp_rate = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
    m.tn_rate = static_cast<double>(c.tn) / static_cast<double>(c.tn + c.fp);
    m.accuracy = static_cast<double>(c.tp + c.tn) /
                 static_cast<double>(c.tp + c.fn + c.tn + c.fp);
    return m;
}

} // namespace gpc
