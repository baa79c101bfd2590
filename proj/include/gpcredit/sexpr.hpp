#pragma once

#include <string>
#include <string_view>

#include "gpcredit/tree.hpp"

namespace gpc {

// Trees serialize to prefix s-expressions: operators add/sub/mul/pdiv,
// features as x<index>, constants in decimal with 17 significant digits
// (enough to reproduce the exact double). A lone terminal prints as a
// bare atom. Example: (sub (mul x3 0.412) (pdiv x0 x7))
std::string to_sexpr(const ExprTree& tree);

// Inverse of to_sexpr. Throws ParseError naming the offending token.
ExprTree parse_sexpr(std::string_view text);

} // namespace gpc
