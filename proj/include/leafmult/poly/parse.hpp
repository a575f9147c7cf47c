#pragma once

#include <string_view>

#include "leafmult/poly/polynomial.hpp"

namespace leafmult {

/// Parses the text syntax: integer and rational literals, variable names of
/// `ring`, `+ - * / ^` and parentheses. Multiplication must be explicit,
/// exponents are non-negative integers and division is only allowed by
/// nonzero constants. to_string() output parses back to the same value.
Polynomial parse_polynomial(const RingPtr& ring, std::string_view text);

}  // namespace leafmult
