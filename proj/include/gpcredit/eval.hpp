#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "gpcredit/dataset.hpp"
#include "gpcredit/evolution.hpp"
#include "gpcredit/fitness.hpp"

namespace gpc {

// Test-set rates for one tree. The test set must contain both classes.
Metrics compute_metrics(const ExprTree& tree, const Dataset& test);

struct ProtocolOptions {
    int n_runs = 30;
    bool fixed_split = false; // one split (base seed) shared by all runs
    int jobs = 1;
};

// Mean metrics across runs plus the per-run records they derive from.
struct ExperimentSummary {
    FitnessKind kind = FitnessKind::Equal;
    std::string dataset_name;
    EvolutionParams params;
    Metrics mean;
    std::vector<RunRecord> runs;
};

// Runs n_runs independent evolutions. Run i splits and evolves with seed
// params.seed + i (split seed stays at params.seed when fixed_split is
// set), evaluates the best tree on that run's test split, and the summary
// averages the per-run metrics.
ExperimentSummary run_protocol(const DatasetProfile& profile, FitnessKind kind,
                               const EvolutionParams& params,
                               const ProtocolOptions& options);

// Same contract, for data that is already loaded and normalized.
ExperimentSummary run_protocol(const Dataset& data,
                               const std::string& dataset_name,
                               const DatasetProfile& profile, FitnessKind kind,
                               const EvolutionParams& params,
                               const ProtocolOptions& options);

struct SweepSeries {
    int population_size = 0;
    // mean best training fitness across runs, per generation (entry 0 is
    // the initial population)
    std::vector<double> mean_best_by_generation;

    double final_mean_best() const { return mean_best_by_generation.back(); }
};

inline const std::vector<int> kDefaultSweepSizes{100, 200, 300, 400, 500};

// Repeats the run protocol at each population size and averages the
// best-fitness traces, producing one series per size.
std::vector<SweepSeries> sweep(const DatasetProfile& profile, FitnessKind kind,
                               const std::vector<int>& population_sizes,
                               const EvolutionParams& params,
                               const ProtocolOptions& options);

// Decimal half-up rounding to 3 places, e.g. 0.7565 -> "0.757".
std::string round_half_up_3(double v);

// One row per summary: technique, TP rate, TN rate, accuracy (3 decimals).
std::string summary_csv(std::span<const ExperimentSummary> summaries);

// The same table formatted for humans.
std::string summary_table(std::span<const ExperimentSummary> summaries);

// Writes summary.csv, runs/run_<i>.csv (generation,best_fitness,
// mean_fitness) and runs/run_<i>.tree under out_dir.
void write_run_outputs(const ExperimentSummary& summary,
                       const std::filesystem::path& out_dir);

// Writes sweep.csv with rows size,generation,mean_best_fitness.
void write_sweep_csv(std::span<const SweepSeries> series,
                     const std::filesystem::path& file);

} // namespace gpc
