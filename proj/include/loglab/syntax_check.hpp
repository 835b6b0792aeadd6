#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "loglab/token.hpp"

namespace loglab {

/// Necessary-condition validity check for a single method's text: it lexes,
/// contains no placeholder tokens, `()[]{}` nest correctly, ends with the
/// body's closing brace, and every statement block closes right after a
/// statement terminator (`;`, `}`, `{` or a `:` label). Strictly weaker than a
/// Java parser; never throws.
bool syntax_check(std::string_view method_text);
bool syntax_check(std::span<const Token> tokens);

/// True iff `()`, `[]` and `{}` are balanced and correctly nested.
bool brackets_balanced(std::span<const Token> tokens);

/// Positions p (0 < p < size) at which a whole statement can be inserted
/// before tokens[p] while keeping the method well formed: directly inside a
/// statement block or a `case X :` group, outside parentheses, initializers,
/// class bodies and arrow-form switches, and not between a block and its
/// `else`/`catch`/`finally`/`while` continuation. Sorted ascending.
std::vector<std::size_t> insertion_points(std::span<const Token> tokens);

}  // namespace loglab
