#include "gpcredit/eval.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "gpcredit/errors.hpp"
#include "gpcredit/sexpr.hpp"

namespace gpc {

namespace {

void write_text_file(const std::filesystem::path& file, const std::string& text) {
    std::ofstream out(file, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot write output file: " + file.string());
    }
    out << text;
    if (!out) {
        throw ConfigError("failed while writing: " + file.string());
    }
}

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

RunRecord single_run(const Dataset& data, const DatasetProfile& profile,
                     FitnessKind kind, const EvolutionParams& params,
                     std::uint64_t run_seed, std::uint64_t split_seed,
                     int jobs) {
    auto [train, test] = stratified_split(data, profile.split_spec(split_seed));
    EvolutionParams run_params = params;
    run_params.seed = run_seed;
    RunRecord record = evolve(train, kind, run_params, jobs);
    record.test_metrics = compute_metrics(record.best_tree, test);
    return record;
}

} // namespace

Metrics compute_metrics(const ExprTree& tree, const Dataset& test) {
    auto [counts, samples] = collect_outcomes(tree, test);
    return metrics_from_counts(counts);
}

ExperimentSummary run_protocol(const Dataset& data,
                               const std::string& dataset_name,
                               const DatasetProfile& profile, FitnessKind kind,
                               const EvolutionParams& params,
                               const ProtocolOptions& options) {
    if (options.n_runs < 1) {
        throw ConfigError("n_runs must be >= 1");
    }
    ExperimentSummary summary;
    summary.kind = kind;
    summary.dataset_name = dataset_name;
    summary.params = params;
    summary.runs.reserve(options.n_runs);

    for (int i = 0; i < options.n_runs; ++i) {
        const std::uint64_t run_seed = params.seed + static_cast<std::uint64_t>(i);
        const std::uint64_t split_seed = options.fixed_split ? params.seed : run_seed;
        summary.runs.push_back(single_run(data, profile, kind, params, run_seed,
                                          split_seed, options.jobs));
    }

    Metrics mean;
    for (const RunRecord& r : summary.runs) {
        mean.tp_rate += r.test_metrics.tp_rate;
        mean.tn_rate += r.test_metrics.tn_rate;
        mean.accuracy += r.test_metrics.accuracy;
    }
    const double n = static_cast<double>(summary.runs.size());
    mean.tp_rate /= n;
    mean.tn_rate /= n;
    mean.accuracy /= n;
    summary.mean = mean;
    return summary;
}

ExperimentSummary run_protocol(const DatasetProfile& profile, FitnessKind kind,
                               const EvolutionParams& params,
                               const ProtocolOptions& options) {
    const Dataset data = load_normalized(profile);
    return run_protocol(data, profile.name, profile, kind, params, options);
}

std::vector<SweepSeries> sweep(const DatasetProfile& profile, FitnessKind kind,
                               const std::vector<int>& population_sizes,
                               const EvolutionParams& params,
                               const ProtocolOptions& options) {
    if (population_sizes.empty()) {
        throw ConfigError("sweep requires at least one population size");
    }
    const Dataset data = load_normalized(profile);
    std::vector<SweepSeries> out;
    out.reserve(population_sizes.size());
    for (int size : population_sizes) {
        EvolutionParams p = params;
        p.population_size = size;
        if (p.tournament_size > size) {
            throw ConfigError("tournament_size exceeds sweep population size " +
                              std::to_string(size));
        }
        ExperimentSummary s =
            run_protocol(data, profile.name, profile, kind, p, options);
        SweepSeries series;
        series.population_size = size;
        series.mean_best_by_generation.assign(
            s.runs.front().train_fitness_trace.size(), 0.0);
        for (const RunRecord& r : s.runs) {
            for (std::size_t g = 0; g < series.mean_best_by_generation.size(); ++g) {
                series.mean_best_by_generation[g] += r.train_fitness_trace[g].best;
            }
        }
        for (double& v : series.mean_best_by_generation) {
            v /= static_cast<double>(s.runs.size());
        }
        out.push_back(std::move(series));
    }
    return out;
}

std::string round_half_up_3(double v) {
    // Format at high precision first so the binary representation of a
    // decimal value (0.7565 is stored just below its nominal value)
    // cannot flip the half-up decision, then round the decimal string.
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9f", v < 0 ? -v : v);
    std::string digits(buf);
    const std::size_t dot = digits.find('.');
    std::string head = digits.substr(0, dot + 4); // keep 3 decimals
    const std::string tail = digits.substr(dot + 4);

    bool round_up = tail >= "500000";
    std::string result = head;
    if (round_up) {
        for (std::size_t i = result.size(); i-- > 0;) {
            if (result[i] == '.') continue;
            if (result[i] != '9') {
                ++result[i];
                break;
            }
            result[i] = '0';
            if (i == 0) result.insert(result.begin(), '1');
        }
    }
    if (v < 0 && result.find_first_not_of("0.") != std::string::npos) {
        result.insert(result.begin(), '-');
    }
    return result;
}

std::string summary_csv(std::span<const ExperimentSummary> summaries) {
    std::string out = "technique,tp_rate,tn_rate,accuracy\n";
    for (const ExperimentSummary& s : summaries) {
        out += fitness_kind_name(s.kind);
        out += ',';
        out += round_half_up_3(s.mean.tp_rate);
        out += ',';
        out += round_half_up_3(s.mean.tn_rate);
        out += ',';
        out += round_half_up_3(s.mean.accuracy);
        out += '\n';
    }
    return out;
}

std::string summary_table(std::span<const ExperimentSummary> summaries) {
    std::ostringstream out;
    char line[160];
    std::snprintf(line, sizeof(line), "%-16s %8s %8s %9s\n", "Technique",
                  "TP Rate", "TN Rate", "Accuracy");
    out << line;
    for (const ExperimentSummary& s : summaries) {
        std::snprintf(line, sizeof(line), "%-16s %8s %8s %9s\n",
                      fitness_kind_name(s.kind).c_str(),
                      round_half_up_3(s.mean.tp_rate).c_str(),
                      round_half_up_3(s.mean.tn_rate).c_str(),
                      round_half_up_3(s.mean.accuracy).c_str());
        out << line;
    }
    return out.str();
}

void write_run_outputs(const ExperimentSummary& summary,
                       const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir / "runs");

    const ExperimentSummary* one = &summary;
    write_text_file(out_dir / "summary.csv", summary_csv({one, 1}));

    for (std::size_t i = 0; i < summary.runs.size(); ++i) {
        const RunRecord& r = summary.runs[i];
        std::string trace = "generation,best_fitness,mean_fitness\n";
        for (std::size_t g = 0; g < r.train_fitness_trace.size(); ++g) {
            trace += std::to_string(g);
            trace += ',';
            trace += format_full(r.train_fitness_trace[g].best);
            trace += ',';
            trace += format_full(r.train_fitness_trace[g].mean);
            trace += '\n';
        }
        const std::string stem = "run_" + std::to_string(i);
        write_text_file(out_dir / "runs" / (stem + ".csv"), trace);
        write_text_file(out_dir / "runs" / (stem + ".tree"),
                        to_sexpr(r.best_tree) + "\n");
    }
}

void write_sweep_csv(std::span<const SweepSeries> series,
                     const std::filesystem::path& file) {
    std::string out = "size,generation,mean_best_fitness\n";
    for (const SweepSeries& s : series) {
        for (std::size_t g = 0; g < s.mean_best_by_generation.size(); ++g) {
            out += std::to_string(s.population_size);
            out += ',';
            out += std::to_string(g);
            out += ',';
            out += format_full(s.mean_best_by_generation[g]);
            out += '\n';
        }
    }
    write_text_file(file, out);
}

} // namespace gpc
