#include "gpcredit/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "gpcredit/errors.hpp"
#include "gpcredit/rng.hpp"

namespace gpc {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) {
        out.push_back(trim(field));
    }
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

double parse_cell(const std::string& cell, std::size_t row, std::size_t col) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || p != cell.data() + cell.size()) {
        throw ParseError("row " + std::to_string(row) + ", column " +
                         std::to_string(col) + ": cannot parse '" + cell +
                         "' as a number");
    }
    return v;
}

// Floor of n*fraction, nudged so decimal fractions hit the exact
// mathematical floor despite binary representation (e.g. 1000 * 0.7).
std::size_t floor_count(std::size_t n, double fraction) {
    return static_cast<std::size_t>(
        std::floor(static_cast<double>(n) * fraction + 1e-9));
}

void check_fraction(double f, const char* name) {
    if (!(f >= 0.0 && f <= 1.0)) {
        throw ConfigError(std::string(name) + " must lie in [0, 1], got " +
                          std::to_string(f));
    }
}

Dataset take_rows(const Dataset& d, const std::vector<std::size_t>& rows) {
    Dataset out;
    out.minority_label = d.minority_label;
    out.majority_label = d.majority_label;
    out.features.resize(d.n_features());
    for (std::size_t j = 0; j < d.n_features(); ++j) {
        out.features[j].reserve(rows.size());
        for (std::size_t i : rows) {
            out.features[j].push_back(d.features[j][i]);
        }
    }
    out.is_minority.reserve(rows.size());
    for (std::size_t i : rows) {
        out.is_minority.push_back(d.is_minority[i]);
    }
    return out;
}

} // namespace

std::size_t Dataset::minority_count() const {
    std::size_t n = 0;
    for (std::uint8_t m : is_minority) n += m;
    return n;
}

std::size_t Dataset::majority_count() const {
    return n_rows() - minority_count();
}

std::vector<double> Dataset::row(std::size_t i) const {
    std::vector<double> out(n_features());
    for (std::size_t j = 0; j < n_features(); ++j) {
        out[j] = features[j][i];
    }
    return out;
}

void SplitSpec::validate() const {
    check_fraction(minority_train_fraction, "minority_train_fraction");
    check_fraction(minority_test_fraction, "minority_test_fraction");
    check_fraction(majority_train_fraction, "majority_train_fraction");
    check_fraction(majority_test_fraction, "majority_test_fraction");
    if (minority_train_fraction + minority_test_fraction > 1.0 + 1e-12) {
        throw ConfigError("minority train+test fractions exceed 1");
    }
    if (majority_train_fraction + majority_test_fraction > 1.0 + 1e-12) {
        throw ConfigError("majority train+test fractions exceed 1");
    }
}

Dataset load_csv(const std::filesystem::path& path, int label_column,
                 const std::string& minority_value, bool header) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open dataset file: " + path.string());
    }
    if (label_column < 0) {
        throw ConfigError("label_column must be non-negative");
    }

    std::vector<std::vector<std::string>> raw;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (header && line_no == 1) continue;
        if (trim(line).empty()) continue;
        raw.push_back(split_fields(line));
    }
    if (raw.empty()) {
        throw SchemaError("dataset file has no data rows: " + path.string());
    }

    const std::size_t n_cols = raw.front().size();
    if (static_cast<std::size_t>(label_column) >= n_cols) {
        throw SchemaError("label_column " + std::to_string(label_column) +
                          " out of range: file has " + std::to_string(n_cols) +
                          " columns");
    }

    std::set<std::string> labels;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i].size() != n_cols) {
            throw SchemaError("row " + std::to_string(i + 1) + " has " +
                              std::to_string(raw[i].size()) +
                              " columns, expected " + std::to_string(n_cols));
        }
        labels.insert(raw[i][static_cast<std::size_t>(label_column)]);
    }
    if (labels.size() != 2) {
        throw SchemaError("label column must contain exactly 2 distinct values, found " +
                          std::to_string(labels.size()));
    }
    if (labels.count(minority_value) == 0) {
        throw SchemaError("minority value '" + minority_value +
                          "' does not occur in the label column");
    }

    Dataset d;
    d.minority_label = minority_value;
    for (const std::string& l : labels) {
        if (l != minority_value) d.majority_label = l;
    }
    d.features.resize(n_cols - 1);
    d.is_minority.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        std::size_t out_col = 0;
        for (std::size_t c = 0; c < n_cols; ++c) {
            if (c == static_cast<std::size_t>(label_column)) continue;
            d.features[out_col].push_back(parse_cell(raw[i][c], i + 1, c + 1));
            ++out_col;
        }
        d.is_minority.push_back(raw[i][static_cast<std::size_t>(label_column)] ==
                                minority_value);
    }
    return d;
}

std::pair<Dataset, NormStats> normalize(const Dataset& d) {
    if (d.n_rows() == 0) {
        throw ConfigError("cannot normalize an empty dataset");
    }
    NormStats stats;
    stats.per_attribute.reserve(d.n_features());
    Dataset out = d;
    for (std::size_t j = 0; j < d.n_features(); ++j) {
        const auto [mn, mx] =
            std::minmax_element(d.features[j].begin(), d.features[j].end());
        stats.per_attribute.push_back({*mn, *mx});
        const double span = *mx - *mn;
        for (double& v : out.features[j]) {
            v = span == 0.0 ? 0.0 : (v - *mn) / span;
        }
    }
    return {std::move(out), std::move(stats)};
}

std::pair<Dataset, Dataset> stratified_split(const Dataset& d,
                                             const SplitSpec& spec) {
    spec.validate();
    if (!d.has_both_classes()) {
        throw ConfigError("stratified split requires both classes present");
    }

    std::vector<std::size_t> minority_rows;
    std::vector<std::size_t> majority_rows;
    for (std::size_t i = 0; i < d.n_rows(); ++i) {
        (d.is_minority[i] ? minority_rows : majority_rows).push_back(i);
    }

    RngState rng(spec.seed);
    rng.shuffle(minority_rows);
    rng.shuffle(majority_rows);

    auto carve = [](const std::vector<std::size_t>& rows, double train_f,
                    double test_f, const char* cls,
                    std::vector<std::size_t>& train,
                    std::vector<std::size_t>& test) {
        const std::size_t n_train = floor_count(rows.size(), train_f);
        const std::size_t n_test = floor_count(rows.size(), test_f);
        if (n_train == 0 || n_test == 0) {
            throw ConfigError(std::string("split leaves the ") + cls +
                              " class empty in train or test");
        }
        train.insert(train.end(), rows.begin(), rows.begin() + n_train);
        test.insert(test.end(), rows.begin() + n_train,
                    rows.begin() + n_train + n_test);
    };

    std::vector<std::size_t> train_rows;
    std::vector<std::size_t> test_rows;
    carve(minority_rows, spec.minority_train_fraction,
          spec.minority_test_fraction, "minority", train_rows, test_rows);
    carve(majority_rows, spec.majority_train_fraction,
          spec.majority_test_fraction, "majority", train_rows, test_rows);

    return {take_rows(d, train_rows), take_rows(d, test_rows)};
}

DatasetProfile DatasetProfile::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) {
        throw ConfigError("cannot open dataset profile: " + file.string());
    }
    DatasetProfile p;
    p.name = file.stem().string();
    bool saw_path = false, saw_label = false, saw_minority = false;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        std::size_t eq = s.find('=');
        if (eq == std::string::npos) {
            throw ParseError(file.string() + ":" + std::to_string(line_no) +
                             ": expected 'key = value'");
        }
        std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));
        auto as_fraction = [&]() {
            try {
                return std::stod(value);
            } catch (const std::exception&) {
                throw ParseError(file.string() + ":" + std::to_string(line_no) +
                                 ": bad number '" + value + "'");
            }
        };
        if (key == "path") {
            p.path = value;
            saw_path = true;
        } else if (key == "label_column") {
            try {
                p.label_column = std::stoi(value);
            } catch (const std::exception&) {
                throw ParseError(file.string() + ":" + std::to_string(line_no) +
                                 ": bad column index '" + value + "'");
            }
            saw_label = true;
        } else if (key == "minority_value") {
            p.minority_value = value;
            saw_minority = true;
        } else if (key == "header") {
            if (value != "true" && value != "false") {
                throw ParseError(file.string() + ":" + std::to_string(line_no) +
                                 ": header must be true or false");
            }
            p.header = value == "true";
        } else if (key == "minority_train_fraction") {
            p.minority_train_fraction = as_fraction();
        } else if (key == "minority_test_fraction") {
            p.minority_test_fraction = as_fraction();
        } else if (key == "majority_train_fraction") {
            p.majority_train_fraction = as_fraction();
        } else if (key == "majority_test_fraction") {
            p.majority_test_fraction = as_fraction();
        } else {
            throw SchemaError(file.string() + ":" + std::to_string(line_no) +
                              ": unknown key '" + key + "'");
        }
    }
    if (!saw_path || !saw_label || !saw_minority) {
        throw SchemaError(file.string() +
                          ": profile requires path, label_column and minority_value");
    }
    if (p.path.is_relative()) {
        p.path = file.parent_path() / p.path;
    }
    return p;
}

Dataset load_normalized(const DatasetProfile& profile) {
    Dataset raw = load_csv(profile.path, profile.label_column,
                           profile.minority_value, profile.header);
    return normalize(raw).first;
}

} // namespace gpc
