#pragma once

#include <string>

#include "msymp/expr.hpp"

namespace msymp {

/// Parses the expression grammar:
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := base ('^' integer)?
///   base   := number | ident | ident '(' expr ')' | '(' expr ')' | '-' base
/// '^' binds tighter than unary minus; exponents are (signed) integer
/// literals; '/' requires a nonzero constant divisor. Decimal literals
/// become exact rationals. Throws MsympError(SyntaxError) with position
/// and expected-token information.
ExprPtr parse_expr(const std::string& src);

}  // namespace msymp
