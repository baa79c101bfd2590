#include <cmath>
#include <doctest.h>
#include <set>

#include "gpcredit/dataset.hpp"
#include "gpcredit/errors.hpp"
#include "gpcredit/rng.hpp"
#include "test_support.hpp"

using namespace gpc;
using namespace test_support;

TEST_CASE("load_csv ingests a handwritten file verbatim") {
    const auto dir = unique_temp_dir("csv");
    write_file(dir / "tiny.csv", "0.5,1.25,bad\n-3,4e2,good\n");
    const Dataset d = load_csv(dir / "tiny.csv", 2, "bad");
    REQUIRE(d.n_rows() == 2);
    REQUIRE(d.n_features() == 2);
    CHECK(d.features[0][0] == 0.5);
    CHECK(d.features[1][0] == 1.25);
    CHECK(d.features[0][1] == -3.0);
    CHECK(d.features[1][1] == 400.0);
    CHECK(d.is_minority[0] == 1);
    CHECK(d.is_minority[1] == 0);
    CHECK(d.minority_label == "bad");
    CHECK(d.majority_label == "good");
}

TEST_CASE("load_csv respects the header flag") {
    const auto dir = unique_temp_dir("csv_header");
    write_file(dir / "h.csv", "a,b,label\n1,2,x\n3,4,y\n");
    const Dataset d = load_csv(dir / "h.csv", 2, "y", true);
    CHECK(d.n_rows() == 2);
    // without the flag the header line lands in the label column
    CHECK_THROWS_AS(load_csv(dir / "h.csv", 2, "y", false), SchemaError);
}

TEST_CASE("load_csv errors carry row and column") {
    const auto dir = unique_temp_dir("csv_err");
    write_file(dir / "bad.csv", "1,2,a\n3,oops,b\n");
    try {
        load_csv(dir / "bad.csv", 2, "a");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("row 2") != std::string::npos);
        CHECK(msg.find("column 2") != std::string::npos);
        CHECK(msg.find("oops") != std::string::npos);
    }
}

TEST_CASE("load_csv schema errors") {
    const auto dir = unique_temp_dir("csv_schema");
    write_file(dir / "three.csv", "1,a\n2,b\n3,c\n");
    CHECK_THROWS_AS(load_csv(dir / "three.csv", 1, "a"), SchemaError);
    write_file(dir / "two.csv", "1,a\n2,b\n");
    CHECK_THROWS_AS(load_csv(dir / "two.csv", 1, "zzz"), SchemaError);
    CHECK_THROWS_AS(load_csv(dir / "missing.csv", 1, "a"), ConfigError);
}

TEST_CASE("normalize maps columns onto [0,1]") {
    Dataset d = separable_dataset(1, 2);
    d.features = {{2.0, 4.0, 6.0}, {5.0, 5.0, 5.0}, {0.0, 1.0, 0.25}};
    d.features.resize(3);
    auto [norm, stats] = normalize(d);
    CHECK(norm.features[0] == std::vector<double>{0.0, 0.5, 1.0});
    CHECK(norm.features[1] == std::vector<double>{0.0, 0.0, 0.0}); // constant
    CHECK(norm.features[2] == std::vector<double>{0.0, 1.0, 0.25}); // identity
    CHECK(stats.per_attribute[0].min == 2.0);
    CHECK(stats.per_attribute[0].max == 6.0);
}

TEST_CASE("normalize is idempotent and range-bounded") {
    RngState rng(5);
    Dataset d = separable_dataset(6, 9);
    d.features.assign(4, {});
    for (auto& col : d.features) {
        for (std::size_t i = 0; i < d.n_rows(); ++i) {
            col.push_back(rng.uniform_real(-30.0, 50.0));
        }
    }
    const Dataset once = normalize(d).first;
    const Dataset twice = normalize(once).first;
    for (std::size_t j = 0; j < once.n_features(); ++j) {
        for (std::size_t i = 0; i < once.n_rows(); ++i) {
            CHECK(once.features[j][i] >= 0.0);
            CHECK(once.features[j][i] <= 1.0);
            CHECK(std::abs(once.features[j][i] - twice.features[j][i]) <= 1e-12);
        }
    }
}

TEST_CASE("stratified split: exact counts, disjoint, deterministic") {
    Dataset d = separable_dataset(10, 20);
    // make rows identifiable through feature 0
    for (std::size_t i = 0; i < d.n_rows(); ++i) {
        d.features[0][i] = static_cast<double>(i);
    }
    SplitSpec spec;
    spec.seed = 42;
    auto [train, test] = stratified_split(d, spec);
    CHECK(train.minority_count() == 5);
    CHECK(train.majority_count() == 10);
    CHECK(test.minority_count() == 5);
    CHECK(test.majority_count() == 10);

    std::set<double> seen;
    for (double v : train.features[0]) seen.insert(v);
    for (double v : test.features[0]) {
        CHECK(seen.count(v) == 0);
        seen.insert(v);
    }

    auto [train2, test2] = stratified_split(d, spec);
    CHECK(train2.features[0] == train.features[0]);
    CHECK(test2.features[0] == test.features[0]);
}

TEST_CASE("stratified split uses the floor rule per class") {
    // Same class shape as the Australian file: 383 majority, 307 minority,
    // minority sampled at 30/30, majority at 50/50.
    Dataset d = separable_dataset(307, 383);
    SplitSpec spec;
    spec.minority_train_fraction = 0.3;
    spec.minority_test_fraction = 0.3;
    spec.seed = 9;
    auto [train, test] = stratified_split(d, spec);

    // brute-force the floor arithmetic
    CHECK(307 * 3 / 10 == 92);
    CHECK(383 / 2 == 191);
    CHECK(train.minority_count() == 92);
    CHECK(test.minority_count() == 92);
    CHECK(train.majority_count() == 191);
    CHECK(test.majority_count() == 191);
    const std::size_t discarded_minority = 307 - 2 * 92;
    CHECK(discarded_minority == 123);
}

TEST_CASE("empty split per class is a configuration error") {
    Dataset d = separable_dataset(10, 10);
    SplitSpec spec;
    spec.minority_train_fraction = 1.0;
    spec.minority_test_fraction = 0.0;
    CHECK_THROWS_AS(stratified_split(d, spec), ConfigError);
}

TEST_CASE("fractions above one are rejected") {
    Dataset d = separable_dataset(10, 10);
    SplitSpec spec;
    spec.majority_train_fraction = 0.8;
    spec.majority_test_fraction = 0.3;
    CHECK_THROWS_AS(stratified_split(d, spec), ConfigError);
}

TEST_CASE("profile loader reads keys and resolves relative paths") {
    const auto dir = unique_temp_dir("profile");
    write_file(dir / "d.csv", "1,a\n2,b\n");
    write_file(dir / "p.profile",
               "# comment\n"
               "path = d.csv\n"
               "label_column = 1\n"
               "minority_value = a\n"
               "header = false\n"
               "minority_train_fraction = 0.3\n"
               "minority_test_fraction = 0.3\n");
    const DatasetProfile p = DatasetProfile::load(dir / "p.profile");
    CHECK(p.path == dir / "d.csv");
    CHECK(p.label_column == 1);
    CHECK(p.minority_value == "a");
    CHECK(p.minority_train_fraction == 0.3);
    CHECK(p.majority_train_fraction == 0.5);
    CHECK(p.name == "p");
}

TEST_CASE("profile loader rejects unknown and missing keys") {
    const auto dir = unique_temp_dir("profile_bad");
    write_file(dir / "unknown.profile",
               "path = x.csv\nlabel_column = 0\nminority_value = a\nwat = 1\n");
    CHECK_THROWS_AS(DatasetProfile::load(dir / "unknown.profile"), SchemaError);
    write_file(dir / "missing.profile", "path = x.csv\n");
    CHECK_THROWS_AS(DatasetProfile::load(dir / "missing.profile"), SchemaError);
    CHECK_THROWS_AS(DatasetProfile::load(dir / "nonexistent.profile"),
                    ConfigError);
}
