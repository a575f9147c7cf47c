#pragma once

#include <array>
#include <vector>

#include "leafmult/germ/jet2.hpp"

namespace leafmult {

/// Precision value meaning "known exactly".
inline constexpr int kExactPrecision = 1 << 28;

/// Series in x known modulo x^precision. Coefficients past the stored ones
/// but below the precision are zero.
struct XSeries {
  std::vector<Rational> c;
  int precision = kExactPrecision;

  static XSeries zero(int precision = kExactPrecision) { return {{}, precision}; }
  static XSeries constant(const Rational& v) { return {{v}, kExactPrecision}; }
  Rational at(int k) const { return k < static_cast<int>(c.size()) ? c[k] : Rational(0); }
  bool known_zero() const;  // every known coefficient vanishes
  int valuation() const;    // first nonzero index, or the precision when none is known
  void trim();
};

XSeries operator+(const XSeries& a, const XSeries& b);
XSeries operator-(const XSeries& a, const XSeries& b);
XSeries operator*(const XSeries& a, const XSeries& b);
XSeries cap(XSeries a, int precision);

/// Polynomial in y with XSeries coefficients; coefficients of y^j for
/// j >= y_precision are unknown.
struct YPoly {
  std::vector<XSeries> coef;
  int y_precision = kExactPrecision;

  int degree() const { return static_cast<int>(coef.size()) - 1; }
  const XSeries& operator[](std::size_t j) const { return coef[j]; }
  /// Lowest x-precision over all coefficients.
  int min_precision() const;
};

YPoly operator*(const YPoly& a, const YPoly& b);
YPoly pow(const YPoly& a, unsigned n);

/// (t1, t2) = M (x, y) with M invertible.
struct LinearChart {
  std::array<std::array<Rational, 2>, 2> m{{{Rational(1), Rational(0)}, {Rational(0), Rational(1)}}};

  static LinearChart identity() { return {}; }
  static LinearChart swap();
  /// t1 = x + lambda * y, t2 = y.
  static LinearChart shear(const Rational& lambda);
  LinearChart inverse() const;
  bool is_identity() const;
};

/// g(M (x, y)) as a jet in (x, y); order, exactness and producer carried over.
Jet2 apply_chart(const Jet2& g, const LinearChart& chart);

/// Jet in (x, y) as a polynomial in y (variable 1) over series in x (variable 0).
YPoly to_ypoly(const Jet2& g);
/// Back to a jet; the order is the largest total degree fully known.
Jet2 to_jet(const YPoly& p);

struct WeierstrassDivision {
  YPoly quotient;
  YPoly remainder;
};

/// g = q W + r with deg_y r < deg W, for W monic in y whose lower
/// coefficients vanish at x = 0. Precision losses are tracked.
WeierstrassDivision weierstrass_divide(const YPoly& g, const YPoly& w);

}  // namespace leafmult
