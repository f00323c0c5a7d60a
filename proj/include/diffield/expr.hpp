#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "diffield/ratfun.hpp"

namespace diffield {

// Expression syntax:
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := '-' unary | power
//   power  := base ('^' integer)?        integer may be negative
//   base   := integer | name | '(' expr ')'
//
// Canonical printing lists terms in descending term order (last variable most
// significant), factors in declaration order, '^' without spaces and a single
// space around binary '+' and '-':
//   (x2 + x0*x1)/(x0*x2 - 3*x1^2)

std::string to_string(const Rat& c);
std::string to_string(const MPoly& p, std::span<const std::string> names);
std::string to_string(const RatFun& u, std::span<const std::string> names);

/// Parses `text` with the given variable names. Throws SyntaxError or
/// UnknownSymbol.
RatFun parse_expr(std::string_view text, std::span<const std::string> names);

/// Names referenced by `text`, in order of first appearance. Throws
/// SyntaxError for malformed input.
std::vector<std::string> referenced_names(std::string_view text);

}  // namespace diffield
