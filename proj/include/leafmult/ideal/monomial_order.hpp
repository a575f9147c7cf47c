#pragma once

#include <string>
#include <vector>

#include "leafmult/poly/polynomial.hpp"

namespace leafmult {

/// A monomial order on a ring with `nvars` variables. `priority` lists the
/// variables from most to least significant (identity by default).
class MonomialOrder {
 public:
  enum class Kind { kDegRevLex, kLex, kElimination, kLocalNegDegRevLex };

  static MonomialOrder degrevlex(std::size_t nvars);
  static MonomialOrder lex(std::size_t nvars);
  /// Block order eliminating the first `block` variables of `priority`:
  /// compares the degree in that block first, then degrevlex inside each block.
  static MonomialOrder elimination(std::size_t nvars, std::size_t block);
  static MonomialOrder local_negdegrevlex(std::size_t nvars);

  MonomialOrder with_priority(std::vector<std::size_t> priority) const;

  Kind kind() const { return kind_; }
  std::size_t block() const { return block_; }
  const std::vector<std::size_t>& priority() const { return priority_; }
  bool is_global() const { return kind_ != Kind::kLocalNegDegRevLex; }

  /// Negative, zero or positive as a is smaller, equal or larger than b.
  int compare(const Monomial& a, const Monomial& b) const;
  bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }

  std::string describe() const;

 private:
  MonomialOrder(Kind kind, std::size_t nvars, std::size_t block);
  int revlex_tail(const Monomial& a, const Monomial& b, std::size_t from, std::size_t to) const;

  Kind kind_;
  std::size_t block_ = 0;
  std::vector<std::size_t> priority_;
};

/// Largest monomial of a nonzero polynomial under `order`, with its coefficient.
std::pair<Monomial, Rational> leading_term(const Polynomial& p, const MonomialOrder& order);

}  // namespace leafmult
