#pragma once

#include <optional>
#include <string>
#include <vector>

#include "leafmult/ideal/groebner.hpp"

namespace leafmult {

/// True iff f lies in the radical of I, decided by 1 in <I, 1 - t*f>.
bool radical_membership(const Polynomial& f, const IdealPresentation& ideal,
                        const GroebnerOptions& options = {});

/// Minimal monomial generators of LT(I) under a global order.
IdealPresentation leading_term_ideal(const IdealPresentation& ideal, const MonomialOrder& order,
                                     const GroebnerOptions& options = {});

/// Number of standard monomials of a monomial ideal, nullopt when infinite.
std::optional<std::size_t> staircase_size(const std::vector<Monomial>& generators, std::size_t nvars);

/// dim_Q Q[x]/I, nullopt when I is not zero-dimensional ("infinite").
std::optional<std::size_t> multiplicity_zero_dim(const IdealPresentation& ideal, const MonomialOrder& order,
                                                 const GroebnerOptions& options = {});

/// Generators are all n-fold products of the input generators.
IdealPresentation ideal_power(const IdealPresentation& ideal, unsigned n);

/// Krull dimension; -1 for the unit ideal.
int dimension(const IdealPresentation& ideal, const GroebnerOptions& options = {});
int dimension(const GroebnerBasis& degrevlex_basis);

/// Elements of I that only involve `keep` (a Groebner basis of the elimination ideal).
IdealPresentation eliminate(const IdealPresentation& ideal, const std::vector<std::size_t>& eliminated,
                            const GroebnerOptions& options = {});

IdealPresentation intersect(const IdealPresentation& a, const IdealPresentation& b,
                            const GroebnerOptions& options = {});

IdealPresentation sum(const IdealPresentation& a, const IdealPresentation& b);

/// Every generator of `sub` lies in `super`.
bool contains(const IdealPresentation& super, const IdealPresentation& sub, const GroebnerOptions& options = {});

/// Least e <= cap with f^e in I, searched over 1, 2, 4, ... and refined by
/// bisection. nullopt when no power up to `cap` is a member.
std::optional<unsigned> nullstellensatz_exponent(const Polynomial& f, const GroebnerBasis& gb, unsigned cap);

/// Per-generator certified exponents for J inside sqrt(I).
struct RadicalCertificate {
  struct Entry {
    Polynomial generator;
    std::optional<unsigned> exponent;  // nullopt: radical membership certified, no power found up to cap
  };
  std::vector<Entry> entries;
  unsigned cap = 64;
};

struct RadicalResult {
  enum class Status { kExact, kPartial };
  IdealPresentation radical;  // J with I <= J <= sqrt(I)
  RadicalCertificate certificate;
  Status status = Status::kPartial;
  std::string method;  // which certified route produced J
};

struct RadicalOptions {
  unsigned exponent_cap = 64;
  GroebnerOptions groebner;
};

/// Best-effort radical with certificates: exact for principal, zero-dimensional,
/// monomial and reduced complete-intersection ideals, and for ideals that
/// reduce to those by splitting off a common factor or unused variables.
RadicalResult attempt_radical(const IdealPresentation& ideal, const RadicalOptions& options = {});

}  // namespace leafmult
