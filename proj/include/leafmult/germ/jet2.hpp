#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>

#include "leafmult/poly/polynomial.hpp"

namespace leafmult {

/// Truncated power series in the leaf coordinates (t1, t2): all coefficients
/// of t1^a t2^b with a + b <= order. A producer regenerates the same germ at
/// any higher order; an exact jet is a polynomial whose terms are all stored.
class Jet2 {
 public:
  using Key = std::pair<int, int>;
  using CoeffMap = std::map<Key, Rational>;
  using Producer = std::function<Jet2(int order)>;

  Jet2() = default;
  explicit Jet2(int order) : order_(order) {}

  /// Exact jet of a polynomial in a two-variable ring (variables are t1, t2).
  static Jet2 from_polynomial(const Polynomial& p, int order);
  static Jet2 constant(const Rational& c, int order);
  /// t1 (var 0) or t2 (var 1), exact.
  static Jet2 variable(int var, int order);
  static Jet2 monomial(int a, int b, const Rational& c, int order);

  int order() const { return order_; }
  const CoeffMap& coefficients() const { return coeffs_; }
  Rational coeff(int a, int b) const;
  /// Sets a coefficient with a + b <= order; zero erases.
  void set(int a, int b, const Rational& c);
  void add(int a, int b, const Rational& c);

  bool is_zero() const { return coeffs_.empty(); }
  /// Lowest total degree of a stored term; -1 for the zero jet.
  int valuation() const;
  Rational constant_term() const { return coeff(0, 0); }
  /// Highest stored total degree; -1 for zero.
  int degree() const;

  /// The full term list when the germ is known to be a polynomial.
  bool is_exact() const { return static_cast<bool>(exact_); }
  const CoeffMap& exact_terms() const { return *exact_; }
  /// Declares the germ to be the polynomial with these terms (must agree
  /// with the stored truncation).
  void set_exact_terms(CoeffMap terms);
  bool can_regenerate() const { return is_exact() || static_cast<bool>(producer_); }
  void set_producer(Producer producer) { producer_ = std::move(producer); }
  const Producer& producer() const { return producer_; }

  /// Same germ at order n: truncation when n <= order, otherwise exact padding
  /// or the producer; throws kNeedsRegeneration when neither is available.
  Jet2 at_order(int n) const;
  Jet2 truncated(int n) const;

  /// Polynomial with the stored coefficients in the ring (t1, t2).
  Polynomial to_polynomial(const RingPtr& leaf_ring) const;

  /// Partial derivative in t1 (var 0) or t2 (var 1); order drops by one.
  Jet2 derivative(int var) const;

  Jet2& operator*=(const Rational& c);
  friend Jet2 operator+(const Jet2& a, const Jet2& b);
  friend Jet2 operator-(const Jet2& a, const Jet2& b);
  friend Jet2 operator*(const Jet2& a, const Jet2& b);
  friend Jet2 operator*(const Rational& c, Jet2 a) { return a *= c; }
  friend Jet2 operator-(Jet2 a) { return a *= Rational(-1); }
  friend bool operator==(const Jet2& a, const Jet2& b) {
    return a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
  }

 private:
  int order_ = 0;
  CoeffMap coeffs_;
  std::shared_ptr<const CoeffMap> exact_;
  Producer producer_;
};

enum class JetOp { kAdd, kSub, kMul };

/// Truncated arithmetic; the result order is the minimum of the inputs (exact
/// operands do not limit it) and the producer re-emits both operands.
Jet2 jet_arith(const Jet2& a, const Jet2& b, JetOp op);

/// Standard ring with variables t1, t2.
RingPtr leaf_ring();

std::string to_string(const Jet2& jet);

}  // namespace leafmult
