#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace gpc {

// Labeled tabular dataset with a designated minority (positive) class.
// Features are stored column-major so batch tree evaluation streams
// each attribute contiguously.
struct Dataset {
    std::vector<std::vector<double>> features; // [attribute][row]
    std::vector<std::uint8_t> is_minority;     // per row
    std::string minority_label;
    std::string majority_label;

    std::size_t n_rows() const { return is_minority.size(); }
    std::size_t n_features() const { return features.size(); }

    std::size_t minority_count() const;
    std::size_t majority_count() const;
    bool has_both_classes() const {
        return minority_count() > 0 && majority_count() > 0;
    }

    std::vector<double> row(std::size_t i) const;
    const std::string& label_of(std::size_t i) const {
        return is_minority[i] ? minority_label : majority_label;
    }
};

// Per-attribute (min, max) over the data the normalization was fit on.
struct NormStats {
    struct Range {
        double min;
        double max;
    };
    std::vector<Range> per_attribute;
};

// Per-class sampling fractions for a stratified train/test split.
struct SplitSpec {
    double minority_train_fraction = 0.5;
    double minority_test_fraction = 0.5;
    double majority_train_fraction = 0.5;
    double majority_test_fraction = 0.5;
    std::uint64_t seed = 0;

    void validate() const; // throws ConfigError
};

// Reads a comma-separated file. label_column is a 0-based column index;
// every other cell must parse as a real number. The label column must
// contain exactly two distinct values, one of which is minority_value.
Dataset load_csv(const std::filesystem::path& path, int label_column,
                 const std::string& minority_value, bool header = false);

// Min-max normalization per attribute, fit on the full dataset:
// v -> (v - min) / (max - min). Constant attributes map to 0.
std::pair<Dataset, NormStats> normalize(const Dataset& d);

// Shuffles each class with a generator seeded from spec.seed, then takes
// floor(n_c * train_fraction) rows for train and the next
// floor(n_c * test_fraction) for test; the remainder is discarded.
// Both splits must end up with at least one row of each class.
std::pair<Dataset, Dataset> stratified_split(const Dataset& d,
                                             const SplitSpec& spec);

// Key-value dataset description: where the file lives, how to read it,
// and how to split it. Relative paths resolve against the profile's
// own directory.
struct DatasetProfile {
    std::filesystem::path path;
    int label_column = -1;
    std::string minority_value;
    bool header = false;
    double minority_train_fraction = 0.5;
    double minority_test_fraction = 0.5;
    double majority_train_fraction = 0.5;
    double majority_test_fraction = 0.5;
    std::string name; // profile file stem, used to tag outputs

    static DatasetProfile load(const std::filesystem::path& file);

    SplitSpec split_spec(std::uint64_t seed) const {
        return SplitSpec{minority_train_fraction, minority_test_fraction,
                         majority_train_fraction, majority_test_fraction, seed};
    }
};

// load_csv + normalize per the profile.
Dataset load_normalized(const DatasetProfile& profile);

} // namespace gpc
