#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "leafmult/error.hpp"
#include "leafmult/ideal/monomial_order.hpp"
#include "leafmult/poly/polynomial.hpp"

namespace leafmult {

/// Finite generating set of a polynomial ideal; zero and duplicate
/// generators are dropped on construction.
class IdealPresentation {
 public:
  IdealPresentation() = default;
  IdealPresentation(RingPtr ring, std::vector<Polynomial> generators);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Polynomial>& generators() const { return gens_; }
  bool is_zero() const { return gens_.empty(); }

 private:
  RingPtr ring_;
  std::vector<Polynomial> gens_;
};

struct GroebnerOptions {
  /// Upper bound on S-pair reductions plus reduction steps.
  std::size_t max_steps = 2'000'000;
};

/// Diagnostic record of one Buchberger run.
struct GroebnerStats {
  std::size_t pairs_considered = 0;
  std::size_t pairs_reduced = 0;
  std::size_t reduction_steps = 0;
  int max_degree = 0;
};

struct GroebnerBasis {
  MonomialOrder order = MonomialOrder::degrevlex(0);
  RingPtr ring;
  std::vector<Polynomial> basis;
  bool reduced = false;
  GroebnerStats stats;

  bool is_unit() const;
};

/// Thrown when a run exceeds its step budget; carries the basis built so far.
class BudgetError : public Error {
 public:
  BudgetError(const std::string& what, std::vector<Polynomial> partial)
      : Error(ErrorCode::kBudget, what), partial_(std::move(partial)) {}
  const std::vector<Polynomial>& partial_basis() const { return partial_; }

 private:
  std::vector<Polynomial> partial_;
};

/// Reduced Groebner basis (Buchberger, Gebauer-Moeller criteria, normal
/// selection by lowest lcm degree). Global orders only.
GroebnerBasis groebner(const IdealPresentation& ideal, const MonomialOrder& order,
                       const GroebnerOptions& options = {});

/// Fully reduced remainder of f modulo the basis.
Polynomial normal_form(const Polynomial& f, const GroebnerBasis& gb);

inline bool is_member(const Polynomial& f, const GroebnerBasis& gb) {
  return normal_form(f, gb).is_zero();
}

}  // namespace leafmult
