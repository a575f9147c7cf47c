#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "leafmult/germ/jet2.hpp"
#include "leafmult/germ/series.hpp"
#include "leafmult/poly/upoly.hpp"

namespace leafmult {

/// A conjugacy class of Puiseux branches x = lambda s^E, y = sum_k y_k s^k
/// with coefficients in K = Q[X]/(modulus). One class may bundle several
/// Galois orbits when their edge roots share a squarefree factor.
struct PuiseuxCycle {
  int ramification = 1;
  std::shared_ptr<const UPoly> modulus;
  AlgebraicElement lambda;
  std::vector<AlgebraicElement> y;
  int precision = 0;  // y is known modulo s^precision (kExactPrecision: y is a polynomial)
  int multiplicity = 1;
  bool multiplicity_certified = true;  // false: repeated only up to the jet order
  Rational first_slope;  // exponent of the leading term of y in x

  int class_degree() const { return modulus->degree(); }
  /// Number of y-branches over C represented by the class.
  int branch_count() const { return ramification * class_degree(); }
  bool is_rational() const { return class_degree() == 1; }
  std::string describe() const;
};

/// Branches of a germ through the origin in a chart where it is y-regular.
struct PuiseuxBranchSet {
  std::vector<PuiseuxCycle> cycles;
  LinearChart chart;       // (t1, t2) = chart (x, y)
  int fibre_degree = 0;    // order of f(0, y)
  int mu = 0;              // order of f at the origin
  int jet_order = 0;       // order of the jet the expansion used
  bool exact = false;      // the germ was a polynomial
  bool order_limited = false;

  /// Sum of multiplicity * branch_count, equal to the fibre degree.
  int branch_degree() const;
};

struct PuiseuxOptions {
  std::optional<LinearChart> chart;
  int series_terms = 8;     // x-precision targeted for each cycle
  int max_order = 64;       // regeneration cap for non-polynomial germs
  int certify_order = 12;   // zero run needed before claiming an axis branch of a series
};

/// Newton-Puiseux decomposition. Polynomial germs are split by squarefree
/// decomposition first (exact multiplicities). Throws kUnsupported on a
/// repeated non-rational edge root, kInconclusive when regeneration runs out.
PuiseuxBranchSet newton_puiseux(const Jet2& f, const PuiseuxOptions& options = {});

/// Identity when f(0, t2) is not identically zero, else the swap, else a shear.
LinearChart regular_chart(const Jet2& f);

/// Order of g(0, y); -1 when no nonzero coefficient is known.
int fibre_order(const Jet2& g);

/// prod over the class branches of (y - y_b(x)) as a monic polynomial in y.
YPoly class_weierstrass(const PuiseuxCycle& c, int x_precision);

/// Product of class Weierstrass factors to their multiplicities.
YPoly branch_product(const std::vector<PuiseuxCycle>& cycles, int x_precision);

/// g(lambda s^E, Y(s)) for g given in chart coordinates.
struct CycleSubstitution {
  std::vector<AlgebraicElement> coeffs;  // powers of s below the precision
  int precision = 0;
};
CycleSubstitution substitute_cycle(const PuiseuxCycle& c, const Jet2& g_chart, int max_terms = 64);

/// Monic factor of the modulus cutting out the branches of the class on which
/// g vanishes to the available precision (degree 0: none).
UPoly vanishing_factor(const PuiseuxCycle& c, const Jet2& g_chart, int* precision = nullptr);

/// The subclass of c whose edge roots are the roots of `factor`.
PuiseuxCycle restrict_cycle(const PuiseuxCycle& c, const UPoly& factor);

}  // namespace leafmult
