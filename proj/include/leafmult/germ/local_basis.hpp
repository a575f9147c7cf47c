#pragma once

#include <optional>
#include <string>
#include <vector>

#include "leafmult/germ/jet2.hpp"

namespace leafmult {

/// Standard basis of <gens> + m^(N+1) in Q[t1,t2]/m^(N+1) under the local
/// degree order (lowest degree leads, ties broken towards higher t1 power).
struct TruncatedStandardBasis {
  int order = 0;
  std::vector<Jet2::CoeffMap> basis;
  std::vector<Jet2::Key> leading;  // minimal leading monomials
  std::vector<Jet2::Key> staircase;  // monomials of degree <= order outside the leading ideal
  bool contains_unit = false;
};

/// Requires every generator to be known at `order` (regenerated if possible).
TruncatedStandardBasis truncated_standard_basis(const std::vector<Jet2>& gens, int order);

/// Stabilization record of a local multiplicity computation.
struct StabilizationCertificate {
  std::string method;  // "unit", "standard basis", "common factor (exact gcd)", "common branch (order-limited)"
  int order = 0;  // N with dim at N equal to dim at N + 1
  std::size_t dim_at_order = 0;
  std::size_t dim_at_next = 0;
  int staircase_degree = -1;  // largest degree of a standard monomial
  std::vector<Jet2::Key> staircase;
  std::string witness;  // common factor or branch for the infinite case
};

struct LocalMultiplicity {
  std::optional<std::size_t> value;  // nullopt: infinite
  StabilizationCertificate certificate;
  bool finite() const { return value.has_value(); }
};

struct LocalMultiplicityOptions {
  int start_order = 0;  // 0: chosen from the generator orders
  int max_order = 96;
};

/// dim Q[[t1,t2]] / <gens>. Certified when the truncated quotient has the same
/// dimension at two consecutive orders N, N+1 and its staircase lies below N.
/// Infinite only on a detected common component; throws kInconclusive when
/// neither happens within the available orders.
LocalMultiplicity local_multiplicity(const std::vector<Jet2>& gens, const LocalMultiplicityOptions& options = {});
LocalMultiplicity local_multiplicity(const Jet2& f, const Jet2& g, const LocalMultiplicityOptions& options = {});

/// Normal form of f modulo a truncated standard basis (terms of degree above
/// the basis order dropped); zero iff f lies in <gens> + m^(order+1).
Jet2::CoeffMap truncated_normal_form(const Jet2& f, const TruncatedStandardBasis& sb);

/// f in <gens> as germs, decided once m^s lies in <gens> (finite multiplicity).
bool local_membership(const Jet2& f, const std::vector<Jet2>& gens, const LocalMultiplicityOptions& options = {});

}  // namespace leafmult
