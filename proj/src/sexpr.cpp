#include "gpcredit/sexpr.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <optional>

#include "gpcredit/errors.hpp"

namespace gpc {

namespace {

const char* op_name(Op op) {
    switch (op) {
    case Op::Add: return "add";
    case Op::Sub: return "sub";
    case Op::Mul: return "mul";
    case Op::Pdiv: return "pdiv";
    }
    return "?";
}

std::optional<Op> op_from_name(std::string_view s) {
    if (s == "add") return Op::Add;
    if (s == "sub") return Op::Sub;
    if (s == "mul") return Op::Mul;
    if (s == "pdiv") return Op::Pdiv;
    return std::nullopt;
}

void append_constant(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

struct Tokenizer {
    std::string_view text;
    std::size_t pos = 0;

    void skip_space() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
            ++pos;
        }
    }

    // Returns "(", ")", an atom, or empty at end of input.
    std::string_view next() {
        skip_space();
        if (pos >= text.size()) return {};
        if (text[pos] == '(' || text[pos] == ')') {
            return text.substr(pos++, 1);
        }
        std::size_t start = pos;
        while (pos < text.size() && text[pos] != '(' && text[pos] != ')' &&
               !std::isspace(static_cast<unsigned char>(text[pos]))) {
            ++pos;
        }
        return text.substr(start, pos - start);
    }
};

constexpr int kMaxNesting = 512;

[[noreturn]] void fail(std::string_view token, const char* what) {
    throw ParseError("s-expression: " + std::string(what) + " at '" +
                     std::string(token.empty() ? std::string_view("<end of input>") : token) + "'");
}

Node terminal_from_atom(std::string_view atom) {
    if (atom.size() >= 2 && atom[0] == 'x' &&
        std::isdigit(static_cast<unsigned char>(atom[1]))) {
        std::int32_t index = 0;
        auto [p, ec] = std::from_chars(atom.data() + 1, atom.data() + atom.size(), index);
        if (ec != std::errc() || p != atom.data() + atom.size()) {
            fail(atom, "bad feature index");
        }
        return Node::feature_ref(index);
    }
    double v = 0.0;
    auto [p, ec] = std::from_chars(atom.data(), atom.data() + atom.size(), v);
    if (ec != std::errc() || p != atom.data() + atom.size()) {
        fail(atom, "expected operator, feature or constant");
    }
    return Node::constant(v);
}

void parse_expr(Tokenizer& tok, ExprTree& tree, int nesting) {
    if (nesting > kMaxNesting) {
        throw ParseError("s-expression: nesting deeper than " +
                         std::to_string(kMaxNesting));
    }
    std::string_view t = tok.next();
    if (t.empty()) fail(t, "unexpected end of input");
    if (t == ")") fail(t, "unexpected token");
    if (t == "(") {
        std::string_view head = tok.next();
        auto op = op_from_name(head);
        if (!op) fail(head, "unknown operator");
        tree.nodes.push_back(Node::function(*op));
        parse_expr(tok, tree, nesting + 1);
        parse_expr(tok, tree, nesting + 1);
        std::string_view close = tok.next();
        if (close != ")") fail(close, "expected ')'");
        return;
    }
    tree.nodes.push_back(terminal_from_atom(t));
}

} // namespace

std::string to_sexpr(const ExprTree& tree) {
    std::string out;
    out.reserve(tree.nodes.size() * 8);
    // Track where each open function still needs children / a ')'.
    std::vector<int> pending;
    auto close_finished = [&] {
        while (!pending.empty() && pending.back() == 0) {
            pending.pop_back();
            out += ')';
            if (!pending.empty()) --pending.back();
        }
    };
    for (const Node& n : tree.nodes) {
        if (!out.empty()) out += ' ';
        switch (n.kind) {
        case Node::Kind::Function:
            out += '(';
            out += op_name(n.op);
            pending.push_back(2);
            break;
        case Node::Kind::Feature:
            out += 'x';
            out += std::to_string(n.feature);
            if (!pending.empty()) --pending.back();
            close_finished();
            break;
        case Node::Kind::Constant:
            append_constant(out, n.value);
            if (!pending.empty()) --pending.back();
            close_finished();
            break;
        }
    }
    return out;
}

ExprTree parse_sexpr(std::string_view text) {
    Tokenizer tok{text};
    ExprTree tree;
    parse_expr(tok, tree, 0);
    std::string_view rest = tok.next();
    if (!rest.empty()) fail(rest, "trailing input");
    return tree;
}

} // namespace gpc
