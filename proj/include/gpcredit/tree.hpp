#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace gpc {

enum class Op : std::uint8_t { Add, Sub, Mul, Pdiv };

// One tree node. Trees are stored as a flat prefix-order sequence;
// every function node has exactly two children, so subtrees are
// contiguous ranges and structural equality is vector equality.
struct Node {
    enum class Kind : std::uint8_t { Function, Feature, Constant };

    Kind kind;
    Op op{};                 // valid when kind == Function
    std::int32_t feature{};  // valid when kind == Feature
    double value{};          // valid when kind == Constant

    static Node function(Op o) {
        Node n{Kind::Function};
        n.op = o;
        return n;
    }
    static Node feature_ref(std::int32_t index) {
        Node n{Kind::Feature};
        n.feature = index;
        return n;
    }
    static Node constant(double v) {
        Node n{Kind::Constant};
        n.value = v;
        return n;
    }

    friend bool operator==(const Node& a, const Node& b) {
        if (a.kind != b.kind) return false;
        switch (a.kind) {
        case Kind::Function: return a.op == b.op;
        case Kind::Feature: return a.feature == b.feature;
        case Kind::Constant: return a.value == b.value;
        }
        return false;
    }
};

// Expression tree over binary arithmetic primitives, feature terminals
// and real constants. Depth counts edges: a single terminal has depth 0.
struct ExprTree {
    std::vector<Node> nodes; // prefix order, left child before right

    std::size_t size() const { return nodes.size(); }
    bool empty() const { return nodes.empty(); }

    // Number of nodes in the subtree rooted at prefix index i.
    std::size_t subtree_length(std::size_t i) const;

    int depth() const;

    // Largest feature index referenced, or -1 if none.
    std::int32_t max_feature_index() const;

    // Checks the structural invariants: non-empty, exactly two children
    // per function, every feature index < n_features.
    bool valid(std::int32_t n_features) const;

    friend bool operator==(const ExprTree& a, const ExprTree& b) {
        return a.nodes == b.nodes;
    }
};

inline constexpr double kEvalClampLimit = 1e12;

// Prediction rule: GPout >= 0 reads as the minority class.
inline bool predicts_minority(double gpout) { return gpout >= 0.0; }

// GPout for one feature vector. Every intermediate value is clamped to
// [-kEvalClampLimit, kEvalClampLimit] and division by exact zero yields 1,
// so the result is always finite.
double eval_tree(const ExprTree& tree, std::span<const double> x);

bool classify_minority(const ExprTree& tree, std::span<const double> x);

// Batch evaluator: computes GPout for every row of a column-major
// feature matrix in one pass over the tree. Reuses internal buffers,
// so one instance per thread amortizes all allocation for a run.
// Produces bit-identical results to eval_tree on each row.
class TreeEvaluator {
public:
    explicit TreeEvaluator(std::size_t n_rows) : n_rows_(n_rows) {}

    std::size_t n_rows() const { return n_rows_; }

    // columns[j] must have n_rows() entries; out must have n_rows() slots.
    void eval(const ExprTree& tree,
              const std::vector<std::vector<double>>& columns,
              std::span<double> out);

private:
    std::size_t n_rows_;
    std::vector<std::vector<double>> stack_;
};

} // namespace gpc
