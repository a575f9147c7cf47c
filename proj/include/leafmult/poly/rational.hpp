#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace leafmult {

// GMP keeps mpq_class in lowest terms with a positive denominator after every
// arithmetic operation; only construction from raw parts needs canonicalize().
using Rational = mpq_class;
using Integer = mpz_class;

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

Rational factorial(unsigned n);
Rational pow(const Rational& base, unsigned exponent);

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace leafmult
