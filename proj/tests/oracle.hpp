#pragma once

// Brute-force reference implementations, written independently of the
// library code paths they check. Everything here recomputes from first
// principles: recursive tree walking, explicit tallying, sort-based
// order statistics.

#include <algorithm>
#include <cstddef>
#include <vector>

#include "gpcredit/fitness.hpp"
#include "gpcredit/tree.hpp"

namespace oracle {

inline double clamp12(double v) {
    if (v > 1.0e12) return 1.0e12;
    if (v < -1.0e12) return -1.0e12;
    return v;
}

inline double eval_at(const gpc::ExprTree& tree, std::size_t& cursor,
                      const std::vector<double>& x) {
    const gpc::Node node = tree.nodes[cursor++];
    if (node.kind == gpc::Node::Kind::Constant) {
        return clamp12(node.value);
    }
    if (node.kind == gpc::Node::Kind::Feature) {
        return clamp12(x[static_cast<std::size_t>(node.feature)]);
    }
    const double a = eval_at(tree, cursor, x);
    const double b = eval_at(tree, cursor, x);
    double r = 0.0;
    switch (node.op) {
    case gpc::Op::Add: r = a + b; break;
    case gpc::Op::Sub: r = a - b; break;
    case gpc::Op::Mul: r = a * b; break;
    case gpc::Op::Pdiv: r = (b == 0.0) ? 1.0 : a / b; break;
    }
    return clamp12(r);
}

inline double eval(const gpc::ExprTree& tree, const std::vector<double>& x) {
    std::size_t cursor = 0;
    return eval_at(tree, cursor, x);
}

struct Tally {
    long tp = 0, fn = 0, tn = 0, fp = 0;
    std::vector<double> minority_errors;
    std::vector<double> majority_errors;
};

inline double squash(double g) {
    const double mag = g < 0.0 ? -g : g;
    return mag / (1.0 + mag);
}

inline void tally_output(Tally& t, double out, bool minority_row) {
    const bool says_minority = out >= 0.0;
    if (minority_row && says_minority) {
        t.tp += 1;
    } else if (minority_row && !says_minority) {
        t.fn += 1;
        t.minority_errors.push_back(squash(out));
    } else if (!minority_row && says_minority) {
        t.fp += 1;
        t.majority_errors.push_back(squash(out));
    } else {
        t.tn += 1;
    }
}

inline Tally tally(const gpc::ExprTree& tree,
                   const std::vector<std::vector<double>>& rows,
                   const std::vector<bool>& is_minority) {
    Tally t;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        tally_output(t, eval(tree, rows[i]), is_minority[i]);
    }
    return t;
}

inline double class_error(const std::vector<double>& errs, gpc::FitnessKind kind) {
    if (errs.empty()) return 0.0;
    std::vector<double> sorted = errs;
    std::sort(sorted.begin(), sorted.end());
    switch (kind) {
    case gpc::FitnessKind::Errors:
        return (sorted.front() + sorted.back()) / 2.0;
    case gpc::FitnessKind::ErrorsMean: {
        double total = 0.0;
        for (double e : sorted) total += e;
        return total / static_cast<double>(sorted.size());
    }
    case gpc::FitnessKind::ErrorsMedian: {
        const std::size_t m = sorted.size();
        if (m % 2 == 1) {
            return sorted[m / 2]; // element floor(m/2)+1, 1-indexed
        }
        return (sorted[m / 2 - 1] + sorted[m / 2]) / 2.0;
    }
    default: return 0.0;
    }
}

inline double fitness(gpc::FitnessKind kind, const Tally& t) {
    const double tp_rate =
        static_cast<double>(t.tp) / static_cast<double>(t.tp + t.fn);
    const double tn_rate =
        static_cast<double>(t.tn) / static_cast<double>(t.tn + t.fp);
    if (kind == gpc::FitnessKind::Equal) {
        return tp_rate + tn_rate;
    }
    return tp_rate + tn_rate + (1.0 - class_error(t.minority_errors, kind)) +
           (1.0 - class_error(t.majority_errors, kind));
}

} // namespace oracle
