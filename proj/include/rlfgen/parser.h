#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rlfgen/polynomial.h"

namespace rlfgen {

/// Syntax or name-resolution error with a 1-based position.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, size_t line, size_t column);
  size_t line() const { return line_; }
  size_t column() const { return column_; }

 private:
  size_t line_;
  size_t column_;
};

/// Parses a polynomial expression over `ring`.
///
///   expr     := term (("+" | "-") term)*
///   term     := factor ("*" factor)*
///   factor   := base ("^" posint)?
///   base     := ident | rational | "(" expr ")" | "-" factor
///   rational := int ("/" posint)?
///
/// There is no implicit multiplication. Identifiers must be ring variables.
Polynomial parse_poly(std::string_view text, const Ring& ring);
Polynomial parse_poly(std::string_view text, const std::vector<std::string>& vars);

/// Parses a comma separated list of rationals, e.g. "2,1" or "1/2, -3".
std::vector<Rational> parse_rational_list(std::string_view text);

}  // namespace rlfgen
