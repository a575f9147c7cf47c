#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "leafmult/foliation/foliation.hpp"
#include "leafmult/germ/jet2.hpp"
#include "leafmult/ideal/groebner.hpp"

namespace leafmult {

struct PairOptions {
  int jet_order = 0;  // 0: default_jet_order(F, G)
  std::uint64_t seed = 0;
  int transverse_retries = 8;
  unsigned exponent_cap = 64;
  GroebnerOptions groebner;
};

/// Global ideal I and local ideal of leaf germs with leaf_jet(I) inside it.
struct NoetherianPairState {
  IdealPresentation global;
  std::vector<Jet2> local;
  std::vector<std::string> local_labels;  // provenance of each local generator
  ContextPtr ctx;
  int certificate_order = 0;  // order at which the containment was checked
  bool radical_certified = false;
};

/// m -> a m + b.
struct Transfer {
  std::uint64_t a = 1;
  std::uint64_t b = 0;
  std::uint64_t apply(std::uint64_t m) const { return a * m + b; }
};

struct LedgerStep {
  enum class Kind { kRadical, kPoisson, kJacobian };
  Kind kind = Kind::kRadical;
  Transfer transfer;
  bool sound = true;  // false for a partial radical
  std::string evidence;  // human-readable summary of the certificate
  std::vector<std::string> global_before, global_after;  // generator text
  std::vector<std::string> local_added;
  int degree_before = 0, degree_after = 0;
  int jet_order = 0;  // order of the leaf jets the step computed
  // Kind-specific data kept for offline re-verification.
  std::vector<std::pair<std::string, unsigned>> radical_exponents;  // (J generator, e) with e = 0: none found
  std::string poisson_f, poisson_g, poisson_bracket;
  std::string jacobian_f, jacobian_h, jacobian_h_reduced;
  int jacobian_k = 0, jacobian_K = 0, jacobian_mu = 0;
  std::uint64_t jacobian_formula_factor = 0;
  std::optional<unsigned> jacobian_certified_exponent;
  bool strict_progress = false;
};

std::string to_string(LedgerStep::Kind kind);

struct BoundLedger {
  enum class Status { kPointExcluded, kExhaustedBudget, kRadicalPartial };
  std::vector<LedgerStep> steps;
  Status status = Status::kExhaustedBudget;
  std::string detail;

  /// Composition of the step transfers applied to `final_multiplicity`.
  std::uint64_t compose(std::uint64_t final_multiplicity = 0) const;
};

std::string to_string(BoundLedger::Status status);

struct BoundReport {
  std::optional<std::uint64_t> bound;  // present when the point was excluded
  BoundLedger ledger;
  std::optional<std::uint64_t> direct_value;
  std::string f_local, g_local, h_f, h_g;  // the split on the leaf
  bool isolated = false;  // no common branch: the isolated path ran
  int jet_order = 0;
  double seconds = 0;
};

/// Validates leaf_jet(I) inside the local ideal (decided through the local
/// multiplicity when finite, else at `order`). Throws kHypothesis naming the
/// offending generator.
NoetherianPairState make_pair(const IdealPresentation& global, std::vector<Jet2> local, ContextPtr ctx, int order,
                              std::vector<std::string> labels = {});

std::pair<NoetherianPairState, LedgerStep> radical_extension(const NoetherianPairState& s,
                                                             const PairOptions& options = {});
std::pair<NoetherianPairState, LedgerStep> poisson_extension(const NoetherianPairState& s, const Polynomial& f,
                                                             const Polynomial& g, const PairOptions& options = {});
/// f_split is the part of leaf_jet(F) off V(I) on the leaf, known to lie in the local ideal.
std::pair<NoetherianPairState, LedgerStep> jacobian_extension(const NoetherianPairState& s, const Polynomial& F,
                                                              const PairOptions& options = {});

/// Rational combinations F, G of the generators with {F, G} outside sqrt(I).
std::optional<std::pair<Polynomial, Polynomial>> find_transverse_pair(const NoetherianPairState& s,
                                                                      std::uint64_t seed, int retries = 8,
                                                                      const GroebnerOptions& options = {});

/// Some generator is nonzero at the base point.
bool point_excluded(const NoetherianPairState& s);

struct ReductionResult {
  NoetherianPairState state;
  std::vector<LedgerStep> steps;
  bool budget_exhausted = false;
  bool partial = false;
};

/// Alternating radical and Poisson steps until no transverse pair remains,
/// the point is excluded, or 2n rounds pass.
ReductionResult isolated_locus_reduction(const NoetherianPairState& s, const PairOptions& options = {});

/// Full pipeline for <F, G> at the context's base point.
BoundReport nonisolated_bound(const Polynomial& F, const Polynomial& G, const ContextPtr& ctx,
                              const PairOptions& options = {});

}  // namespace leafmult
