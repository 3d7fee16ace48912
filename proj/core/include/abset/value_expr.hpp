#pragma once

// Arithmetic expressions for real parameters: integers, decimal literals,
// sqrt(.), + - * /, integer powers ^ and parentheses. Results stay exact
// while every step is rational.

#include "abset/interval.hpp"

#include <string>

namespace abset {

Value parse_value(const std::string& text, mpfr_prec_t prec);

}  // namespace abset
