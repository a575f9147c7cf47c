#include "leafmult/germ/series.hpp"

#include <algorithm>

#include "leafmult/error.hpp"

namespace leafmult {
namespace {

int add_prec(int a, int b) {
  if (a >= kExactPrecision || b >= kExactPrecision) return kExactPrecision;
  return std::min(a + b, kExactPrecision);
}

}  // namespace

bool XSeries::known_zero() const {
  return std::all_of(c.begin(), c.end(), [](const Rational& v) { return v == 0; });
}

int XSeries::valuation() const {
  for (std::size_t k = 0; k < c.size(); ++k)
    if (c[k] != 0) return static_cast<int>(k);
  return precision;
}

void XSeries::trim() {
  if (static_cast<int>(c.size()) > precision) c.resize(precision);
  while (!c.empty() && c.back() == 0) c.pop_back();
}

XSeries cap(XSeries a, int precision) {
  a.precision = std::min(a.precision, precision);
  a.trim();
  return a;
}

XSeries operator+(const XSeries& a, const XSeries& b) {
  XSeries r;
  r.precision = std::min(a.precision, b.precision);
  r.c.resize(std::max(a.c.size(), b.c.size()));
  for (std::size_t k = 0; k < r.c.size(); ++k) r.c[k] = a.at(k) + b.at(k);
  r.trim();
  return r;
}

XSeries operator-(const XSeries& a, const XSeries& b) {
  XSeries r;
  r.precision = std::min(a.precision, b.precision);
  r.c.resize(std::max(a.c.size(), b.c.size()));
  for (std::size_t k = 0; k < r.c.size(); ++k) r.c[k] = a.at(k) - b.at(k);
  r.trim();
  return r;
}

XSeries operator*(const XSeries& a, const XSeries& b) {
  XSeries r;
  r.precision = std::min(add_prec(a.precision, b.valuation()), add_prec(b.precision, a.valuation()));
  if (a.c.empty() || b.c.empty()) {
    r.trim();
    return r;
  }
  std::size_t len = std::min<std::size_t>(a.c.size() + b.c.size() - 1, static_cast<std::size_t>(r.precision));
  r.c.assign(len, Rational(0));
  for (std::size_t i = 0; i < a.c.size() && i < len; ++i) {
    if (a.c[i] == 0) continue;
    for (std::size_t j = 0; j < b.c.size() && i + j < len; ++j) r.c[i + j] += a.c[i] * b.c[j];
  }
  r.trim();
  return r;
}

int YPoly::min_precision() const {
  int p = kExactPrecision;
  for (const auto& c : coef) p = std::min(p, c.precision);
  return p;
}

YPoly operator*(const YPoly& a, const YPoly& b) {
  YPoly r;
  if (a.coef.empty() || b.coef.empty()) return r;
  r.coef.assign(a.coef.size() + b.coef.size() - 1, XSeries::zero());
  for (std::size_t i = 0; i < a.coef.size(); ++i)
    for (std::size_t j = 0; j < b.coef.size(); ++j) r.coef[i + j] = r.coef[i + j] + a.coef[i] * b.coef[j];
  // An unknown y-tail of one factor only reaches degrees from its cutoff upward.
  int ya = a.y_precision >= kExactPrecision ? kExactPrecision : a.y_precision;
  int yb = b.y_precision >= kExactPrecision ? kExactPrecision : b.y_precision;
  r.y_precision = std::min(ya, yb);
  if (r.y_precision < kExactPrecision && static_cast<int>(r.coef.size()) > r.y_precision)
    r.coef.resize(r.y_precision);
  return r;
}

YPoly pow(const YPoly& a, unsigned n) {
  YPoly r;
  r.coef = {XSeries::constant(1)};
  for (unsigned k = 0; k < n; ++k) r = r * a;
  return r;
}

LinearChart LinearChart::swap() {
  LinearChart c;
  c.m = {{{Rational(0), Rational(1)}, {Rational(1), Rational(0)}}};
  return c;
}

LinearChart LinearChart::shear(const Rational& lambda) {
  LinearChart c;
  c.m[0][1] = lambda;
  return c;
}

LinearChart LinearChart::inverse() const {
  Rational det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  if (det == 0) throw Error(ErrorCode::kInvalidArgument, "singular chart");
  LinearChart c;
  c.m = {{{m[1][1] / det, -m[0][1] / det}, {-m[1][0] / det, m[0][0] / det}}};
  return c;
}

bool LinearChart::is_identity() const { return m == LinearChart{}.m; }

namespace {

// (m00 x + m01 y)^a (m10 x + m11 y)^b expanded.
Jet2::CoeffMap substitute_map(const Jet2::CoeffMap& g, const LinearChart& ch, int limit) {
  Jet2::CoeffMap out;
  std::map<int, std::vector<Rational>> pw1, pw2;  // power -> coefficients by y-degree
  auto powers = [](const Rational& cx, const Rational& cy, int n) {
    std::vector<Rational> c{Rational(1)};
    for (int k = 0; k < n; ++k) {
      std::vector<Rational> next(c.size() + 1, Rational(0));
      for (std::size_t i = 0; i < c.size(); ++i) {
        next[i] += c[i] * cx;
        next[i + 1] += c[i] * cy;
      }
      c = std::move(next);
    }
    return c;
  };
  for (const auto& [k, coeff] : g) {
    if (k.first + k.second > limit) continue;
    if (!pw1.count(k.first)) pw1[k.first] = powers(ch.m[0][0], ch.m[0][1], k.first);
    if (!pw2.count(k.second)) pw2[k.second] = powers(ch.m[1][0], ch.m[1][1], k.second);
    const auto& p1 = pw1[k.first];
    const auto& p2 = pw2[k.second];
    const int d = k.first + k.second;
    for (std::size_t i = 0; i < p1.size(); ++i) {
      if (p1[i] == 0) continue;
      for (std::size_t j = 0; j < p2.size(); ++j) {
        if (p2[j] == 0) continue;
        int ydeg = static_cast<int>(i + j);
        Jet2::Key key{d - ydeg, ydeg};
        Rational v = coeff * p1[i] * p2[j];
        auto [it, ins] = out.emplace(key, v);
        if (!ins) {
          it->second += v;
          if (it->second == 0) out.erase(it);
        }
      }
    }
  }
  return out;
}

}  // namespace

Jet2 apply_chart(const Jet2& g, const LinearChart& chart) {
  if (chart.is_identity()) return g;
  Jet2 r(g.order());
  for (const auto& [k, c] : substitute_map(g.coefficients(), chart, g.order())) r.set(k.first, k.second, c);
  if (g.is_exact()) {
    r.set_exact_terms(substitute_map(g.exact_terms(), chart, kExactPrecision));
  } else if (g.producer()) {
    r.set_producer([g, chart](int n) { return apply_chart(g.at_order(n), chart); });
  }
  return r;
}

YPoly to_ypoly(const Jet2& g) {
  YPoly p;
  const bool exact = g.is_exact();
  const Jet2::CoeffMap& terms = exact ? g.exact_terms() : g.coefficients();
  int ydeg = -1;
  for (const auto& [k, c] : terms) ydeg = std::max(ydeg, k.second);
  const int n = g.order();
  const int top = exact ? ydeg : n;
  for (int j = 0; j <= top; ++j) p.coef.push_back(XSeries::zero(exact ? kExactPrecision : n + 1 - j));
  for (const auto& [k, c] : terms) {
    XSeries& s = p.coef[k.second];
    if (static_cast<int>(s.c.size()) <= k.first) s.c.resize(k.first + 1, Rational(0));
    s.c[k.first] = c;
  }
  for (auto& s : p.coef) s.trim();
  p.y_precision = exact ? kExactPrecision : n + 1;
  while (exact && !p.coef.empty() && p.coef.back().c.empty()) p.coef.pop_back();
  return p;
}

Jet2 to_jet(const YPoly& p) {
  int order = p.y_precision >= kExactPrecision ? kExactPrecision : p.y_precision - 1;
  for (std::size_t j = 0; j < p.coef.size(); ++j)
    if (p.coef[j].precision < kExactPrecision) order = std::min(order, p.coef[j].precision + static_cast<int>(j) - 1);
  Jet2::CoeffMap full;
  for (std::size_t j = 0; j < p.coef.size(); ++j)
    for (std::size_t i = 0; i < p.coef[j].c.size(); ++i)
      if (p.coef[j].c[i] != 0) full.emplace(Jet2::Key{static_cast<int>(i), static_cast<int>(j)}, p.coef[j].c[i]);
  if (order >= kExactPrecision) {
    int d = 0;
    for (const auto& [k, c] : full) d = std::max(d, k.first + k.second);
    Jet2 j(d);
    for (const auto& [k, c] : full) j.set(k.first, k.second, c);
    j.set_exact_terms(std::move(full));
    return j;
  }
  if (order < 0) throw Error(ErrorCode::kNeedsRegeneration, "series has no known coefficients left");
  Jet2 j(order);
  for (const auto& [k, c] : full)
    if (k.first + k.second <= order) j.set(k.first, k.second, c);
  return j;
}

WeierstrassDivision weierstrass_divide(const YPoly& g, const YPoly& w) {
  const int d = w.degree();
  if (d < 0 || w.coef[d].at(0) != 1 || w.coef[d].c.size() != 1 || w.coef[d].precision < kExactPrecision)
    throw Error(ErrorCode::kInvalidArgument, "divisor must be monic in y");
  for (int k = 0; k < d; ++k)
    if (w.coef[k].at(0) != 0 && w.coef[k].precision > 0)
      throw Error(ErrorCode::kInvalidArgument, "divisor is not a Weierstrass polynomial");
  YPoly rem = g;
  WeierstrassDivision out;
  const int n = rem.degree();
  if (n >= d) out.quotient.coef.assign(n - d + 1, XSeries::zero());
  for (int j = n; j >= d; --j) {
    XSeries q = rem.coef[j];
    out.quotient.coef[j - d] = q;
    for (int k = 0; k <= d; ++k) rem.coef[j - d + k] = rem.coef[j - d + k] - q * w.coef[k];
  }
  if (static_cast<int>(rem.coef.size()) > d) rem.coef.resize(d);
  // Weight x = d, y = 1: an unknown y-tail from degree Y on has weight >= Y,
  // and division by W never lowers weight.
  if (g.y_precision < kExactPrecision) {
    const int Y = g.y_precision;
    for (int m = 0; m < static_cast<int>(rem.coef.size()); ++m)
      rem.coef[m] = cap(rem.coef[m], std::max(0, (Y - m + d - 1) / d));
    for (int m = 0; m < static_cast<int>(out.quotient.coef.size()); ++m)
      out.quotient.coef[m] = cap(out.quotient.coef[m], std::max(0, (Y - d - m + d - 1) / d));
  }
  rem.y_precision = kExactPrecision;
  out.quotient.y_precision = g.y_precision < kExactPrecision ? std::max(0, g.y_precision - d) : kExactPrecision;
  out.remainder = std::move(rem);
  return out;
}

}  // namespace leafmult
