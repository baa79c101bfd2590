#include "gpcredit/tree.hpp"

#include <algorithm>
#include <stdexcept>

namespace gpc {

namespace {

inline double clamp_value(double v) {
    if (v > kEvalClampLimit) return kEvalClampLimit;
    if (v < -kEvalClampLimit) return -kEvalClampLimit;
    return v;
}

inline double apply_op(Op op, double a, double b) {
    switch (op) {
    case Op::Add: return a + b;
    case Op::Sub: return a - b;
    case Op::Mul: return a * b;
    case Op::Pdiv: return b == 0.0 ? 1.0 : a / b;
    }
    return 0.0;
}

} // namespace

std::size_t ExprTree::subtree_length(std::size_t i) const {
    std::size_t needed = 1;
    std::size_t j = i;
    while (needed > 0) {
        needed += nodes[j].kind == Node::Kind::Function ? 1 : std::size_t(-1);
        ++j;
    }
    return j - i;
}

int ExprTree::depth() const {
    // Walk the prefix sequence with a stack of pending-children counters;
    // the stack height at a node is its depth in edges.
    int max_depth = 0;
    std::vector<int> pending;
    for (const Node& n : nodes) {
        max_depth = std::max(max_depth, static_cast<int>(pending.size()));
        if (n.kind == Node::Kind::Function) {
            pending.push_back(2);
        } else {
            while (!pending.empty() && --pending.back() == 0) {
                pending.pop_back();
            }
        }
    }
    return max_depth;
}

std::int32_t ExprTree::max_feature_index() const {
    std::int32_t max_index = -1;
    for (const Node& n : nodes) {
        if (n.kind == Node::Kind::Feature) {
            max_index = std::max(max_index, n.feature);
        }
    }
    return max_index;
}

bool ExprTree::valid(std::int32_t n_features) const {
    if (nodes.empty()) return false;
    std::size_t needed = 1;
    for (const Node& n : nodes) {
        if (needed == 0) return false; // trailing nodes past the root subtree
        if (n.kind == Node::Kind::Function) {
            needed += 1;
        } else {
            if (n.kind == Node::Kind::Feature &&
                (n.feature < 0 || n.feature >= n_features)) {
                return false;
            }
            needed -= 1;
        }
    }
    return needed == 0;
}

double eval_tree(const ExprTree& tree, std::span<const double> x) {
    // Reverse prefix order is a postfix evaluation: terminals push,
    // functions pop left then right.
    thread_local std::vector<double> stack;
    stack.clear();
    for (auto it = tree.nodes.rbegin(); it != tree.nodes.rend(); ++it) {
        const Node& n = *it;
        switch (n.kind) {
        case Node::Kind::Constant:
            stack.push_back(clamp_value(n.value));
            break;
        case Node::Kind::Feature:
            if (n.feature < 0 || static_cast<std::size_t>(n.feature) >= x.size()) {
                throw std::out_of_range("eval_tree: feature index x" +
                                        std::to_string(n.feature) +
                                        " out of range for " +
                                        std::to_string(x.size()) + " attributes");
            }
            stack.push_back(clamp_value(x[n.feature]));
            break;
        case Node::Kind::Function: {
            const double left = stack.back();
            stack.pop_back();
            const double right = stack.back();
            stack.pop_back();
            stack.push_back(clamp_value(apply_op(n.op, left, right)));
            break;
        }
        }
    }
    return stack.back();
}

bool classify_minority(const ExprTree& tree, std::span<const double> x) {
    return predicts_minority(eval_tree(tree, x));
}

void TreeEvaluator::eval(const ExprTree& tree,
                         const std::vector<std::vector<double>>& columns,
                         std::span<double> out) {
    std::size_t top = 0;
    auto level = [&](std::size_t i) -> std::vector<double>& {
        while (stack_.size() <= i) {
            stack_.emplace_back(n_rows_);
        }
        return stack_[i];
    };

    for (auto it = tree.nodes.rbegin(); it != tree.nodes.rend(); ++it) {
        const Node& n = *it;
        switch (n.kind) {
        case Node::Kind::Constant: {
            std::vector<double>& dst = level(top++);
            std::fill(dst.begin(), dst.end(), clamp_value(n.value));
            break;
        }
        case Node::Kind::Feature: {
            if (n.feature < 0 ||
                static_cast<std::size_t>(n.feature) >= columns.size()) {
                throw std::out_of_range("TreeEvaluator: feature index x" +
                                        std::to_string(n.feature) +
                                        " out of range for " +
                                        std::to_string(columns.size()) +
                                        " attributes");
            }
            std::vector<double>& dst = level(top++);
            const std::vector<double>& col = columns[n.feature];
            for (std::size_t r = 0; r < n_rows_; ++r) {
                dst[r] = clamp_value(col[r]);
            }
            break;
        }
        case Node::Kind::Function: {
            // Left operand was pushed last; the result lands in the right
            // operand's slot, which becomes the new stack top.
            const std::vector<double>& left = stack_[top - 1];
            std::vector<double>& right = stack_[top - 2];
            switch (n.op) {
            case Op::Add:
                for (std::size_t r = 0; r < n_rows_; ++r) {
                    right[r] = clamp_value(left[r] + right[r]);
                }
                break;
            case Op::Sub:
                for (std::size_t r = 0; r < n_rows_; ++r) {
                    right[r] = clamp_value(left[r] - right[r]);
                }
                break;
            case Op::Mul:
                for (std::size_t r = 0; r < n_rows_; ++r) {
                    right[r] = clamp_value(left[r] * right[r]);
                }
                break;
            case Op::Pdiv:
                for (std::size_t r = 0; r < n_rows_; ++r) {
                    right[r] = clamp_value(right[r] == 0.0 ? 1.0
                                                           : left[r] / right[r]);
                }
                break;
            }
            --top;
            break;
        }
        }
    }
    const std::vector<double>& result = stack_[0];
    std::copy(result.begin(), result.end(), out.begin());
}

} // namespace gpc
