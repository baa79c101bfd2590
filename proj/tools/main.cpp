#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gpcredit/errors.hpp"
#include "gpcredit/eval.hpp"
#include "gpcredit/evolution.hpp"
#include "gpcredit/sexpr.hpp"

namespace {

struct CommonArgs {
    std::string dataset_profile;
    std::string fitness = "equal";
    std::uint64_t seed = 1;
    int population = 500;
    int generations = 1000;
    int n_runs = 30;
    std::string output = "out";
    int jobs = 1;
    bool fixed_split = false;
    bool scaled = false;
};

void add_common_options(CLI::App* cmd, CommonArgs& args, bool with_runs) {
    cmd->add_option("--dataset", args.dataset_profile,
                    "Dataset profile file (key = value text)")
        ->required();
    cmd->add_option("--fitness", args.fitness,
                    "Fitness function: equal, errors, errors-mean, errors-median")
        ->default_val("equal");
    cmd->add_option("--seed", args.seed, "Base random seed; run i uses seed+i")
        ->default_val("1");
    cmd->add_option("--population", args.population, "Population size")
        ->default_val("500");
    cmd->add_option("--generations", args.generations, "Number of generations")
        ->default_val("1000");
    if (with_runs) {
        cmd->add_option("--n-runs", args.n_runs, "Number of independent runs")
            ->default_val("30");
    }
    cmd->add_option("--output", args.output, "Output directory")
        ->default_val("out");
    cmd->add_option("--jobs", args.jobs,
                    "Worker threads for fitness evaluation (results do not "
                    "depend on this)")
        ->default_val("1");
    cmd->add_flag("--fixed-split", args.fixed_split,
                  "Use one train/test split (base seed) for every run");
    cmd->add_flag("--scaled", args.scaled,
                  "Quick preset: population 100, generations 100, 10 runs");
}

gpc::EvolutionParams params_from(const CLI::App* cmd, const CommonArgs& args,
                                 int& n_runs) {
    gpc::EvolutionParams p;
    p.seed = args.seed;
    p.population_size = args.population;
    p.generations = args.generations;
    n_runs = args.n_runs;
    if (args.scaled) {
        // Explicit flags still win over the preset.
        if (cmd->count("--population") == 0) p.population_size = 100;
        if (cmd->count("--generations") == 0) p.generations = 100;
        if (cmd->count("--n-runs") == 0) n_runs = 10;
    }
    return p;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw gpc::ConfigError("cannot open file: " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int cmd_run(const CLI::App* cmd, const CommonArgs& args) {
    const gpc::FitnessKind kind = gpc::parse_fitness_kind(args.fitness);
    const auto profile = gpc::DatasetProfile::load(args.dataset_profile);
    int n_runs = 0;
    const gpc::EvolutionParams params = params_from(cmd, args, n_runs);
    const gpc::ProtocolOptions options{n_runs, args.fixed_split, args.jobs};

    const gpc::ExperimentSummary summary =
        gpc::run_protocol(profile, kind, params, options);
    gpc::write_run_outputs(summary, args.output);
    std::cout << gpc::summary_table({&summary, 1});
    return 0;
}

int cmd_sweep(const CLI::App* cmd, const CommonArgs& args,
              const std::vector<int>& sizes) {
    const gpc::FitnessKind kind = gpc::parse_fitness_kind(args.fitness);
    const auto profile = gpc::DatasetProfile::load(args.dataset_profile);
    int n_runs = 0;
    const gpc::EvolutionParams params = params_from(cmd, args, n_runs);
    const gpc::ProtocolOptions options{n_runs, args.fixed_split, args.jobs};

    const std::vector<gpc::SweepSeries> series =
        gpc::sweep(profile, kind, sizes, params, options);
    std::filesystem::create_directories(args.output);
    gpc::write_sweep_csv(series, std::filesystem::path(args.output) / "sweep.csv");

    std::printf("%-12s %s\n", "population", "mean_best_fitness");
    for (const gpc::SweepSeries& s : series) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.6f", s.final_mean_best());
        std::printf("%-12d %s\n", s.population_size, buf);
    }
    return 0;
}

struct PredictArgs {
    std::string tree_file;
    std::string data_file;
    std::string dataset_profile;
    std::uint64_t seed = 1;
    bool test_split = false;
};

int cmd_predict(const PredictArgs& args) {
    const gpc::ExprTree tree = gpc::parse_sexpr(read_file(args.tree_file));

    gpc::Dataset data;
    bool have_labels = false;
    if (!args.dataset_profile.empty()) {
        auto profile = gpc::DatasetProfile::load(args.dataset_profile);
        profile.path = args.data_file;
        data = gpc::load_normalized(profile);
        have_labels = true;
        if (args.test_split) {
            data = gpc::stratified_split(data, profile.split_spec(args.seed)).second;
        }
    } else {
        if (args.test_split) {
            throw gpc::ConfigError("--test-split requires --dataset");
        }
        // Headerless CSV of raw feature values, no label column.
        std::ifstream in(args.data_file);
        if (!in) {
            throw gpc::ConfigError("cannot open file: " + args.data_file);
        }
        std::string line;
        std::vector<std::vector<double>> rows;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
            std::vector<double> row;
            std::stringstream ss(line);
            std::string cell;
            while (std::getline(ss, cell, ',')) {
                try {
                    row.push_back(std::stod(cell));
                } catch (const std::exception&) {
                    throw gpc::ParseError("row " + std::to_string(line_no) +
                                          ": cannot parse '" + cell +
                                          "' as a number");
                }
            }
            rows.push_back(std::move(row));
        }
        if (rows.empty()) {
            throw gpc::SchemaError("no data rows in " + args.data_file);
        }
        data.features.resize(rows.front().size());
        for (const auto& row : rows) {
            if (row.size() != rows.front().size()) {
                throw gpc::SchemaError("ragged rows in " + args.data_file);
            }
            for (std::size_t j = 0; j < row.size(); ++j) {
                data.features[j].push_back(row[j]);
            }
        }
        data.is_minority.assign(rows.size(), 0);
        data.minority_label = "minority";
        data.majority_label = "majority";
    }

    if (tree.max_feature_index() >= static_cast<std::int32_t>(data.n_features())) {
        throw gpc::ConfigError(
            "tree references feature x" +
            std::to_string(tree.max_feature_index()) + " but the data has " +
            std::to_string(data.n_features()) + " feature columns");
    }

    for (std::size_t i = 0; i < data.n_rows(); ++i) {
        const std::vector<double> row = data.row(i);
        const bool minority = gpc::classify_minority(tree, row);
        std::cout << (minority ? data.minority_label : data.majority_label)
                  << "\n";
    }

    if (have_labels) {
        const gpc::Metrics m = gpc::compute_metrics(tree, data);
        std::cout << "tp_rate " << gpc::round_half_up_3(m.tp_rate) << "\n"
                  << "tn_rate " << gpc::round_half_up_3(m.tn_rate) << "\n"
                  << "accuracy " << gpc::round_half_up_3(m.accuracy) << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Genetic-programming binary classifier for class-imbalanced "
                 "tabular data"};
    app.require_subcommand(1);

    CommonArgs run_args;
    CLI::App* run = app.add_subcommand(
        "run", "Evolve classifiers over repeated runs and report mean "
               "test metrics");
    add_common_options(run, run_args, true);

    CommonArgs sweep_args;
    std::vector<int> sizes = gpc::kDefaultSweepSizes;
    CLI::App* sweep = app.add_subcommand(
        "sweep", "Repeat the run protocol across population sizes");
    add_common_options(sweep, sweep_args, true);
    sweep->add_option("--sizes", sizes, "Population sizes to sweep")
        ->delimiter(',')
        ->default_val(std::vector<int>{100, 200, 300, 400, 500});

    PredictArgs predict_args;
    CLI::App* predict = app.add_subcommand(
        "predict", "Apply a serialized tree to a data file");
    predict->add_option("tree", predict_args.tree_file, "Tree file (s-expression)")
        ->required();
    predict->add_option("data", predict_args.data_file, "CSV data file")
        ->required();
    predict->add_option("--dataset", predict_args.dataset_profile,
                        "Dataset profile describing the data file's schema; "
                        "enables label output and metrics");
    predict->add_option("--seed", predict_args.seed,
                        "Split seed for --test-split")
        ->default_val("1");
    predict->add_flag("--test-split", predict_args.test_split,
                      "Predict on the test partition of the profile's split");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(run, run_args);
        if (sweep->parsed()) return cmd_sweep(sweep, sweep_args, sizes);
        if (predict->parsed()) return cmd_predict(predict_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
