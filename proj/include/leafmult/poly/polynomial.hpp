#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "leafmult/poly/monomial.hpp"
#include "leafmult/poly/rational.hpp"

namespace leafmult {

/// Ordered list of variable names. Rings compare equal iff their names match.
class Ring {
 public:
  explicit Ring(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  /// Index of a variable, or -1.
  int index_of(const std::string& name) const;

  friend bool operator==(const Ring& a, const Ring& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
};

using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(std::vector<std::string> names);
/// The ring with `extra` appended after the variables of `base`.
RingPtr extend_ring(const RingPtr& base, const std::vector<std::string>& extra);

/// Sparse multivariate polynomial over Q. Terms are kept in degrevlex order
/// (largest first) and never carry a zero coefficient.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, Rational, DegRevLexGreater>;

  Polynomial() = default;
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

  static Polynomial constant(RingPtr ring, const Rational& c);
  static Polynomial variable(RingPtr ring, std::size_t var);
  static Polynomial term(RingPtr ring, Monomial m, const Rational& c);

  const RingPtr& ring() const { return ring_; }
  std::size_t nvars() const { return ring_ ? ring_->size() : 0; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  int total_degree() const;  // -1 for the zero polynomial
  int degree_in(std::size_t var) const;
  /// Lowest total degree of a term (order at the origin); -1 for zero.
  int order() const;
  bool uses_variable(std::size_t var) const;

  Rational coefficient(const Monomial& m) const;
  Rational constant_term() const;
  /// Degrevlex-leading monomial and coefficient; the polynomial must be nonzero.
  const Monomial& leading_monomial() const { return terms_.begin()->first; }
  const Rational& leading_coefficient() const { return terms_.begin()->second; }

  /// Adds c*m, dropping the term if it cancels.
  void add_term(const Monomial& m, const Rational& c);

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend Polynomial operator-(Polynomial a);

  Polynomial mul_term(const Monomial& m, const Rational& c) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

  /// Coefficients of this polynomial viewed as univariate in `var`:
  /// result[k] multiplies var^k and does not involve var.
  std::vector<Polynomial> coefficients_in(std::size_t var) const;

  /// Re-expresses the polynomial in `target`, sending variable i to
  /// target variable var_map[i].
  Polynomial map_into(RingPtr target, std::span<const std::size_t> var_map) const;
  /// Embeds into a ring whose variable names are a superset (matched by name).
  Polynomial embed_into(const RingPtr& target) const;

 private:
  RingPtr ring_;
  TermMap terms_;
};

void require_same_ring(const Polynomial& a, const Polynomial& b);

Polynomial pow(const Polynomial& p, unsigned exponent);

/// Formal partial derivative.
Polynomial derive(const Polynomial& p, std::size_t var);

Rational evaluate(const Polynomial& p, std::span<const Rational> point);

/// Substitutes polynomials (all in a common target ring) for the variables.
Polynomial substitute(const Polynomial& p, std::span<const Polynomial> values);

/// Exact quotient a / b when b divides a, otherwise nullopt is signalled by
/// returning false.
bool try_divide(const Polynomial& a, const Polynomial& b, Polynomial& quotient);
/// Exact quotient; throws when b does not divide a.
Polynomial divide_exact(const Polynomial& a, const Polynomial& b);

/// Scales to leading coefficient 1 under degrevlex (zero stays zero).
Polynomial make_monic(const Polynomial& p);

/// A greatest common divisor, monic under degrevlex; gcd(a, 0) = monic(a).
Polynomial gcd(const Polynomial& a, const Polynomial& b);
Polynomial gcd(std::span<const Polynomial> polys);

/// Product of the distinct irreducible factors of p, monic. Throws on zero.
Polynomial squarefree_part(const Polynomial& p);

/// Squarefree factors by multiplicity: p = c * prod factors[i]^(i+1).
/// Each factor is squarefree, pairwise coprime, monic (possibly 1).
std::vector<Polynomial> squarefree_decomposition(const Polynomial& p);

std::string to_string(const Polynomial& p);

}  // namespace leafmult
