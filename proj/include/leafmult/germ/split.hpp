#pragma once

#include <string>

#include "leafmult/germ/jet2.hpp"
#include "leafmult/germ/puiseux.hpp"

namespace leafmult {

/// fL = h_f f and gL = h_g g where h_f, h_g collect the branches through the
/// origin shared by fL and gL.
struct GermSplit {
  Jet2 h_f, h_g, f, g;
  int certified_order = 0;  // kExactPrecision for polynomial germs
  bool exact = false;
  std::string method;  // "exact gcd" or "branch matching"
};

/// Exact gcd for polynomial germs, matched Puiseux classes otherwise.
GermSplit split_common(const Jet2& fL, const Jet2& gL, const PuiseuxOptions& options = {});

/// fL = h f where h collects the branches of fL through the origin lying on
/// the common zero set of `locus`.
struct LocusSplit {
  Jet2 h, f;
  int certified_order = 0;
  bool exact = false;
};
LocusSplit split_on_locus(const Jet2& fL, const std::vector<Jet2>& locus, const PuiseuxOptions& options = {});

/// Branches through the origin of the common zero set of `gens`, read off
/// the expansion of the first nonzero generator.
PuiseuxBranchSet common_branches(const std::vector<Jet2>& gens, const PuiseuxOptions& options = {});

struct FactorMultiplicities {
  int k = 0;  // least multiplicity of a branch factor
  int K = 0;  // largest multiplicity of a branch factor
  Jet2 reduced;  // h', the product of the distinct branch factors
  int branch_count = 0;  // irreducible branches over C, with multiplicity
  int certified_order = 0;
  bool exact = false;
};

/// Branch multiplicities of h at the origin; h must vanish there.
FactorMultiplicities factor_multiplicities(const Jet2& h, const PuiseuxOptions& options = {});

}  // namespace leafmult
