#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "leafmult/poly/rational.hpp"

namespace leafmult {

/// Dense univariate polynomial over Q, coefficients from degree 0 upward,
/// without trailing zeros.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coeffs);
  static UPoly constant(const Rational& c) { return UPoly(std::vector<Rational>{c}); }
  /// The polynomial X - root.
  static UPoly linear(const Rational& root) { return UPoly({-root, Rational(1)}); }
  static UPoly monomial(int degree, const Rational& c = 1);

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : Rational(0); }
  const Rational& leading() const { return c_.back(); }

  Rational operator()(const Rational& x) const;

  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const Rational& c);
  friend bool operator==(const UPoly&, const UPoly&) = default;

 private:
  void trim();
  std::vector<Rational> c_;
};

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
UPoly derivative(const UPoly& p);
UPoly monic(const UPoly& p);
UPoly gcd(const UPoly& a, const UPoly& b);
/// Returns (g, s) with g = gcd(a, m) monic and s*a = g mod m.
std::pair<UPoly, UPoly> half_extended_gcd(const UPoly& a, const UPoly& m);
/// Squarefree factors by multiplicity, monic: p = c * prod f[i]^(i+1).
std::vector<UPoly> squarefree_decomposition(const UPoly& p);
/// Distinct rational roots with their multiplicities, ascending.
std::vector<std::pair<Rational, int>> rational_roots(const UPoly& p);

std::string to_string(const UPoly& p, const std::string& var = "X");

/// Element of the étale algebra Q[X]/(modulus) for a squarefree modulus.
/// With a linear modulus this is just Q.
class AlgebraicElement {
 public:
  AlgebraicElement() = default;
  AlgebraicElement(std::shared_ptr<const UPoly> modulus, UPoly value);
  AlgebraicElement(std::shared_ptr<const UPoly> modulus, const Rational& c) : AlgebraicElement(modulus, UPoly::constant(c)) {}

  const UPoly& value() const { return value_; }
  std::shared_ptr<const UPoly> modulus() const { return modulus_; }
  bool is_zero() const { return value_.is_zero(); }

  AlgebraicElement operator+(const AlgebraicElement& o) const;
  AlgebraicElement operator-(const AlgebraicElement& o) const;
  AlgebraicElement operator*(const AlgebraicElement& o) const;
  AlgebraicElement operator-() const;
  /// Inverse; throws when the element is a zero divisor.
  AlgebraicElement inverse() const;
  AlgebraicElement pow(long exponent) const;
  /// Trace of multiplication-by-this over Q.
  Rational trace() const;

 private:
  std::shared_ptr<const UPoly> modulus_;
  UPoly value_;
};

}  // namespace leafmult
