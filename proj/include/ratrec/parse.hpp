#ifndef RATREC_PARSE_HPP
#define RATREC_PARSE_HPP

#include <string>
#include <vector>

#include "ratrec/rational.hpp"

namespace ratrec {

/// Parses an expression over the given ordered variable names into a reduced
/// rational function. Grammar: integer literals, identifiers, binary + - * /,
/// ^ with a nonnegative integer literal exponent, unary -, parentheses;
/// precedence ^ > unary- > * / > + -, left-associative within a level.
RationalFunction parse_expr(const std::string& text, const std::vector<std::string>& variables,
                            FieldTag field);

/// Same grammar with explicit name-to-index bindings (several names may map
/// to one variable) over an ambient variable count.
RationalFunction parse_expr_bound(const std::string& text,
                                  const std::vector<std::pair<std::string, std::uint32_t>>& bindings,
                                  std::uint32_t nvars, FieldTag field);

/// Parses a constant expression like "6" or "-3/2".
ExactScalar parse_scalar(const std::string& text, FieldTag field);

}  // namespace ratrec

#endif
