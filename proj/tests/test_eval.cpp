#include <cmath>
#include <doctest.h>
#include <filesystem>

#include "gpcredit/errors.hpp"
#include "gpcredit/eval.hpp"
#include "gpcredit/sexpr.hpp"
#include "test_support.hpp"

using namespace gpc;
using namespace test_support;

namespace {

ExprTree const_tree(double v) {
    ExprTree t;
    t.nodes = {Node::constant(v)};
    return t;
}

// Writes a small two-class CSV plus a matching profile; returns the profile.
DatasetProfile fixture_profile(const std::filesystem::path& dir,
                               std::size_t n_minority, std::size_t n_majority,
                               double overlap = 0.25) {
    RngState rng(1234);
    std::string csv;
    for (std::size_t i = 0; i < n_minority + n_majority; ++i) {
        const bool minority = i < n_minority;
        const double center = minority ? 0.7 : 0.3;
        for (int j = 0; j < 3; ++j) {
            const double v = center + rng.uniform_real(-overlap, overlap) +
                             (j == 2 ? rng.uniform_real(-0.5, 0.5) : 0.0);
            csv += std::to_string(v);
            csv += ',';
        }
        csv += minority ? "pos\n" : "neg\n";
    }
    write_file(dir / "data.csv", csv);
    write_file(dir / "fixture.profile",
               "path = data.csv\nlabel_column = 3\nminority_value = pos\n");
    return DatasetProfile::load(dir / "fixture.profile");
}

EvolutionParams tiny_params() {
    EvolutionParams p;
    p.population_size = 30;
    p.generations = 5;
    p.seed = 7;
    return p;
}

} // namespace

TEST_CASE("compute_metrics for a perfect and an all-majority classifier") {
    const Dataset d = dataset2({{0.9, 0.1}, {0.8, 0.3}, {0.1, 0.9}, {0.2, 0.6}},
                               {1, 1, 0, 0});
    ExprTree sub;
    sub.nodes = {Node::function(Op::Sub), Node::feature_ref(0),
                 Node::feature_ref(1)};
    const Metrics perfect = compute_metrics(sub, d);
    CHECK(perfect.tp_rate == 1.0);
    CHECK(perfect.tn_rate == 1.0);
    CHECK(perfect.accuracy == 1.0);
}

TEST_CASE("constant negative tree on an imbalanced test set") {
    // same class shape as the 50/50 split of a 700/300 file
    const Dataset test = separable_dataset(150, 350);
    const Metrics m = compute_metrics(const_tree(-1.0), test);
    CHECK(m.tp_rate == 0.0);
    CHECK(m.tn_rate == 1.0);
    CHECK(m.accuracy == doctest::Approx(0.7).epsilon(1e-15));
}

TEST_CASE("metrics on a handmade four-row set") {
    // (sub x0 x1): +0.6 tp, -0.2 fn, -0.1 tn, +0.3 fp
    const Dataset d = dataset2({{0.8, 0.2}, {0.3, 0.5}, {0.4, 0.5}, {0.9, 0.6}},
                               {1, 1, 0, 0});
    ExprTree sub;
    sub.nodes = {Node::function(Op::Sub), Node::feature_ref(0),
                 Node::feature_ref(1)};
    const Metrics m = compute_metrics(sub, d);
    CHECK(m.tp_rate == 0.5);
    CHECK(m.tn_rate == 0.5);
    CHECK(m.accuracy == 0.5);
}

TEST_CASE("accuracy decomposes into class rates") {
    RngState rng(55);
    for (int i = 0; i < 300; ++i) {
        ConfusionCounts c;
        c.tp = static_cast<long long>(rng.uniform_index(40));
        c.fn = static_cast<long long>(rng.uniform_index(40)) + (c.tp == 0 ? 1 : 0);
        c.tn = static_cast<long long>(rng.uniform_index(40));
        c.fp = static_cast<long long>(rng.uniform_index(40)) + (c.tn == 0 ? 1 : 0);
        const Metrics m = metrics_from_counts(c);
        const double n_min = static_cast<double>(c.tp + c.fn);
        const double n_maj = static_cast<double>(c.tn + c.fp);
        const double recomposed =
            (m.tp_rate * n_min + m.tn_rate * n_maj) / (n_min + n_maj);
        CHECK(std::abs(m.accuracy - recomposed) <= 1e-12);
    }
}

TEST_CASE("run_protocol with one run reports that run's metrics") {
    const auto dir = unique_temp_dir("proto1");
    const DatasetProfile profile = fixture_profile(dir, 12, 28);
    const ExperimentSummary s = run_protocol(
        profile, FitnessKind::Equal, tiny_params(), ProtocolOptions{1, false, 1});
    REQUIRE(s.runs.size() == 1);
    CHECK(s.mean.tp_rate == s.runs[0].test_metrics.tp_rate);
    CHECK(s.mean.tn_rate == s.runs[0].test_metrics.tn_rate);
    CHECK(s.mean.accuracy == s.runs[0].test_metrics.accuracy);
    CHECK(s.runs[0].seed == tiny_params().seed);
}

TEST_CASE("summary means equal hand-computed means") {
    const auto dir = unique_temp_dir("proto3");
    const DatasetProfile profile = fixture_profile(dir, 12, 28);
    const ExperimentSummary s = run_protocol(
        profile, FitnessKind::ErrorsMean, tiny_params(),
        ProtocolOptions{3, false, 1});
    REQUIRE(s.runs.size() == 3);
    double tp = 0, tn = 0, acc = 0;
    for (const RunRecord& r : s.runs) {
        tp += r.test_metrics.tp_rate;
        tn += r.test_metrics.tn_rate;
        acc += r.test_metrics.accuracy;
    }
    CHECK(s.mean.tp_rate == tp / 3.0);
    CHECK(s.mean.tn_rate == tn / 3.0);
    CHECK(s.mean.accuracy == acc / 3.0);
    // distinct seeds per run
    CHECK(s.runs[0].seed + 1 == s.runs[1].seed);
    CHECK(s.runs[1].seed + 1 == s.runs[2].seed);
}

TEST_CASE("stored run records replay exactly from their serialized trees") {
    const auto dir = unique_temp_dir("replay");
    const DatasetProfile profile = fixture_profile(dir, 15, 35);
    const ExperimentSummary s = run_protocol(
        profile, FitnessKind::Errors, tiny_params(), ProtocolOptions{2, false, 1});
    const Dataset data = load_normalized(profile);
    for (const RunRecord& r : s.runs) {
        const ExprTree replayed = parse_sexpr(to_sexpr(r.best_tree));
        const auto test = stratified_split(data, profile.split_spec(r.seed)).second;
        const Metrics m = compute_metrics(replayed, test);
        CHECK(m.tp_rate == r.test_metrics.tp_rate);
        CHECK(m.tn_rate == r.test_metrics.tn_rate);
        CHECK(m.accuracy == r.test_metrics.accuracy);
    }
}

TEST_CASE("fixed split reuses the base seed split in every run") {
    const auto dir = unique_temp_dir("fixed");
    const DatasetProfile profile = fixture_profile(dir, 12, 28);
    EvolutionParams p = tiny_params();
    p.generations = 0;
    const ExperimentSummary s = run_protocol(profile, FitnessKind::Equal, p,
                                             ProtocolOptions{2, true, 1});
    const Dataset data = load_normalized(profile);
    const auto test = stratified_split(data, profile.split_spec(p.seed)).second;
    for (const RunRecord& r : s.runs) {
        const Metrics m = compute_metrics(r.best_tree, test);
        CHECK(m.accuracy == r.test_metrics.accuracy);
    }
}

TEST_CASE("sweep produces one series per size with mean best traces") {
    const auto dir = unique_temp_dir("sweep");
    const DatasetProfile profile = fixture_profile(dir, 12, 28);
    EvolutionParams p = tiny_params();
    p.generations = 0;

    SUBCASE("single size, single run") {
        const auto series = sweep(profile, FitnessKind::Equal, {25}, p,
                                  ProtocolOptions{1, false, 1});
        REQUIRE(series.size() == 1);
        REQUIRE(series[0].mean_best_by_generation.size() == 1);
        EvolutionParams q = p;
        q.population_size = 25;
        const ExperimentSummary s = run_protocol(
            profile, FitnessKind::Equal, q, ProtocolOptions{1, false, 1});
        CHECK(series[0].final_mean_best() ==
              s.runs[0].train_fitness_trace.back().best);
    }

    SUBCASE("default sizes give five series") {
        const auto series = sweep(profile, FitnessKind::Equal,
                                  kDefaultSweepSizes, p,
                                  ProtocolOptions{1, false, 1});
        CHECK(series.size() == 5);
    }

    SUBCASE("initial best fitness is monotone in population size") {
        // same seed: the larger population extends the smaller one
        const auto series = sweep(profile, FitnessKind::Equal, {100, 500}, p,
                                  ProtocolOptions{30, false, 1});
        REQUIRE(series.size() == 2);
        CHECK(series[1].mean_best_by_generation[0] >=
              series[0].mean_best_by_generation[0]);
    }
}

TEST_CASE("round_half_up_3") {
    CHECK(round_half_up_3(0.7565) == "0.757");
    CHECK(round_half_up_3(0.7564) == "0.756");
    CHECK(round_half_up_3(0.75649) == "0.756");
    CHECK(round_half_up_3(0.5) == "0.500");
    CHECK(round_half_up_3(0.0) == "0.000");
    CHECK(round_half_up_3(1.0) == "1.000");
    CHECK(round_half_up_3(0.9995) == "1.000");
    CHECK(round_half_up_3(0.12349999) == "0.123");
}

TEST_CASE("summary csv layout") {
    ExperimentSummary s;
    s.kind = FitnessKind::Equal;
    s.mean = {0.5, 0.5, 0.5};
    const ExperimentSummary* one = &s;
    const std::string csv = summary_csv({one, 1});
    CHECK(csv == "technique,tp_rate,tn_rate,accuracy\nequal,0.500,0.500,0.500\n");

    std::vector<ExperimentSummary> four(4);
    four[0].kind = FitnessKind::Equal;
    four[1].kind = FitnessKind::Errors;
    four[2].kind = FitnessKind::ErrorsMean;
    four[3].kind = FitnessKind::ErrorsMedian;
    const std::string table = summary_csv(four);
    const auto pos_equal = table.find("\nequal,");
    const auto pos_errors = table.find("\nerrors,");
    const auto pos_mean = table.find("\nerrors-mean,");
    const auto pos_median = table.find("\nerrors-median,");
    CHECK(pos_equal != std::string::npos);
    CHECK(pos_equal < pos_errors);
    CHECK(pos_errors < pos_mean);
    CHECK(pos_mean < pos_median);
}

TEST_CASE("write_run_outputs writes the documented files") {
    const auto dir = unique_temp_dir("outputs");
    const DatasetProfile profile = fixture_profile(dir, 12, 28);
    EvolutionParams p = tiny_params();
    p.generations = 3;
    const ExperimentSummary s = run_protocol(profile, FitnessKind::Equal, p,
                                             ProtocolOptions{2, false, 1});
    const auto out = dir / "out";
    write_run_outputs(s, out);
    CHECK(std::filesystem::exists(out / "summary.csv"));
    CHECK(std::filesystem::exists(out / "runs" / "run_0.csv"));
    CHECK(std::filesystem::exists(out / "runs" / "run_0.tree"));
    CHECK(std::filesystem::exists(out / "runs" / "run_1.tree"));

    const std::string trace = read_file(out / "runs" / "run_0.csv");
    CHECK(trace.rfind("generation,best_fitness,mean_fitness\n0,", 0) == 0);
    // 4 trace rows (generation 0..3) plus header
    CHECK(std::count(trace.begin(), trace.end(), '\n') == 5);

    const std::string tree_text = read_file(out / "runs" / "run_0.tree");
    const ExprTree parsed = parse_sexpr(tree_text);
    CHECK(parsed == s.runs[0].best_tree);
}

TEST_CASE("write_sweep_csv emits size,generation rows") {
    const auto dir = unique_temp_dir("sweepcsv");
    std::vector<SweepSeries> series(2);
    series[0].population_size = 100;
    series[0].mean_best_by_generation = {1.0, 1.5};
    series[1].population_size = 500;
    series[1].mean_best_by_generation = {1.25, 1.75};
    write_sweep_csv(series, dir / "sweep.csv");
    const std::string text = read_file(dir / "sweep.csv");
    CHECK(text == "size,generation,mean_best_fitness\n"
                  "100,0,1\n100,1,1.5\n500,0,1.25\n500,1,1.75\n");
}
