#pragma once

#include <string>

#include "flf/polynomial.hpp"

namespace flf {

/// Parses the polynomial grammar: identifiers, integer and p/q literals,
/// + - * ^ and parentheses. `^-k` is accepted on inverted variables.
/// Positions in errors are offset by (line, column) of the text's start.
Polynomial parse_polynomial(const std::string& text, const RingPtr& ring, std::size_t line = 1,
                            std::size_t column = 1);

/// Canonical printer; parse_polynomial(print_polynomial(p)) == p.
std::string print_polynomial(const Polynomial& p);

std::string print_coefficient(const mpq_class& c);

}  // namespace flf
