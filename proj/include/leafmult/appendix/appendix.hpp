#pragma once

#include <string>
#include <vector>

#include "leafmult/foliation/foliation.hpp"
#include "leafmult/germ/puiseux.hpp"
#include "leafmult/ideal/groebner.hpp"

namespace leafmult {

/// Sub-multiset of the cycles of a branch set: multiplicity[i] copies of
/// cycle i, at most its multiplicity in the set.
struct MonodromicSubset {
  std::vector<int> multiplicity;
  std::string describe(const PuiseuxBranchSet& bs) const;
};

/// All nonempty sub-multisets made of whole cycles.
std::vector<MonodromicSubset> enumerate_monodromic(const PuiseuxBranchSet& bs);

/// prod over S of (y - y_b(x)) from symmetric functions, back in leaf
/// coordinates. x_precision bounds the series part of non-polynomial cycles.
Jet2 construct_FS(const PuiseuxBranchSet& bs, const MonodromicSubset& s, int x_precision = 24);

struct AppendixOptions {
  int jet_order = 0;  // 0: 2 deg F + 8
  int series_terms = 24;
  GroebnerOptions groebner;
};

struct ExtensionWitness {
  Jet2 h;   // branches of F on the leaf trace of V(I)
  Jet2 H;   // product of the F_S
  int mu = 0;
  PuiseuxBranchSet branches;  // B_h
  std::vector<MonodromicSubset> subsets;
  std::vector<bool> fs_divides_h;
  int factor_count = 0;
  bool divides = false;  // H | h^(2^mu)
  int divisibility_order = 0;  // total degree to which the division is known
  bool vanishes = false;  // H = 0 on every branch of the leaf trace of V(I)
  int vanishing_order = 0;  // s-precision of the weakest branch substitution
  std::vector<std::string> trace_branches;
  bool holds() const { return divides && vanishes; }
};

/// Desk-scale extension lemma on the leaf. Throws kHypothesis when F is not
/// in I or the leaf trace of V(I) is isolated at the point.
ExtensionWitness construct_H(const Polynomial& F, const IdealPresentation& I, const ContextPtr& ctx,
                             const AppendixOptions& options = {});

}  // namespace leafmult
