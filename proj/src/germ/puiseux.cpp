#include "leafmult/germ/puiseux.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "leafmult/error.hpp"

namespace leafmult {
namespace {

using Key = Jet2::Key;
using KSeries = std::vector<AlgebraicElement>;

// Composite substitution from the original chart to the current level:
// x = Lambda s^E, y = A(s) + B s^kB * y_cur.
struct Param {
  Rational lambda = 1;
  int E = 1;
  std::map<int, Rational> A;
  Rational B = 1;
  int kB = 0;
  std::optional<Rational> first_slope;
};

Rational qpow(const Rational& u, long n) {
  Rational r = pow(u, static_cast<unsigned>(n < 0 ? -n : n));
  return n < 0 ? Rational(1 / r) : r;
}

// b e - a q = 1.
std::pair<long, long> bezout(long e, long q) {
  long old_r = e, r = q, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    long quo = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - quo * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - quo * s);
    std::tie(old_t, t) = std::make_pair(t, old_t - quo * t);
  }
  // old_s e + old_t q = 1
  return {-old_t, old_s};  // a, b
}

Param compose(const Param& p, const Rational& u, long a, long b, int e, int q) {
  Param r;
  r.lambda = p.lambda * qpow(u, a * p.E);
  r.E = e * p.E;
  for (const auto& [n, c] : p.A) r.A[e * n] += c * qpow(u, a * n);
  Rational bcoef = p.B * qpow(u, a * p.kB + b);
  r.A[e * p.kB + q] += bcoef;
  r.B = bcoef;
  r.kB = e * p.kB + q;
  r.first_slope = p.first_slope ? p.first_slope : std::optional<Rational>(Rational(q, e));
  return r;
}

std::vector<Rational> binomial_row(int j) {
  std::vector<Rational> row(j + 1);
  row[0] = 1;
  for (int k = 1; k <= j; ++k) row[k] = row[k - 1] * (j - k + 1) / k;
  return row;
}

class Expander {
 public:
  Expander(const PuiseuxOptions& options, bool exact) : options_(options), exact_(exact) {}

  std::vector<PuiseuxCycle> cycles;
  bool order_limited = false;

  void expand(const Jet2& f, int d, const Param& param) {
    const Jet2::CoeffMap& terms = exact_ ? f.exact_terms() : f.coefficients();
    const int N = exact_ ? kExactPrecision : f.order();
    std::vector<int> imin(d + 1, -1);
    for (const auto& [k, c] : terms)
      if (k.second <= d && (imin[k.second] < 0 || k.first < imin[k.second])) imin[k.second] = k.first;
    if (imin[d] != 0) throw Error(ErrorCode::kInvalidArgument, "germ is not regular of the stated fibre order");
    int j_last = 0;
    while (imin[j_last] < 0) ++j_last;

    int ci = 0, cj = d;
    while (cj > j_last) {
      int best_j = -1;
      Rational best;
      for (int j = cj - 1; j >= j_last; --j) {
        if (imin[j] < 0) continue;
        Rational slope(imin[j] - ci, cj - j);
        if (best_j < 0 || slope <= best) {
          best = slope;
          best_j = j;
        }
      }
      process_edge(f, terms, N, ci, cj, imin[best_j], best_j, d, param);
      ci = imin[best_j];
      cj = best_j;
    }
    if (j_last > 0) {
      if (!exact_) {
        // Columns below j_last are zero on the known range only.
        if (N + 1 - (j_last - 1) < options_.certify_order)
          throw Error(ErrorCode::kNeedsRegeneration, "axis branch not separated at this order");
        order_limited = true;
      }
      emit_axis(param, j_last);
    }
  }

 private:
  void process_edge(const Jet2& f, const Jet2::CoeffMap& terms, int N, int i1, int j1, int i2, int j2, int d,
                    const Param& param) {
    const int di = i2 - i1, dj = j1 - j2;
    const int g = std::gcd(di, dj);
    const int q = di / g, e = dj / g, L = g;
    const int w = e * i2 + q * j2;
    if (!exact_) {
      // Unknown points (i, j), i >= N + 1 - j, must lie strictly above the edge line.
      auto weight = [&](int j) { return e * (N + 1 - j) + q * j; };
      if (weight(0) <= w || weight(d) <= w)
        throw Error(ErrorCode::kNeedsRegeneration, "Newton polygon not determined at this order");
    }
    std::vector<Rational> qc(L + 1);
    for (int k = 0; k <= L; ++k) {
      auto it = terms.find(Key{i2 - q * k, j2 + e * k});
      qc[k] = it == terms.end() ? Rational(0) : it->second;
    }
    UPoly Q(qc);
    auto [a, b] = bezout(e, q);
    UPoly rest = Q;
    for (const auto& [u, r] : rational_roots(Q)) {
      for (int k = 0; k < r; ++k) rest = divmod(rest, UPoly::linear(u)).first;
      if (r == 1) {
        terminal(f, terms, N, std::make_shared<const UPoly>(UPoly::linear(u)), a, b, e, q, w, param);
      } else {
        Jet2 f1 = substitute(f, terms, N, u, a, b, e, q, w, r);
        expand(f1, r, compose(param, u, a, b, e, q));
      }
    }
    if (rest.degree() > 0) {
      auto parts = squarefree_decomposition(rest);
      for (std::size_t m = 1; m < parts.size(); ++m)
        if (parts[m].degree() > 0)
          throw Error(ErrorCode::kUnsupported,
                      "repeated non-rational root of the edge polynomial " + to_string(monic(Q), "v"));
      if (!parts.empty() && parts[0].degree() > 0)
        terminal(f, terms, N, std::make_shared<const UPoly>(parts[0]), a, b, e, q, w, param);
    }
  }

  // f(u^a s^e, u^b s^q (1 + y1)) / s^w for a rational root u.
  Jet2 substitute(const Jet2& f, const Jet2::CoeffMap& terms, int N, const Rational& u, long a, long b, int e, int q,
                  int w, int r) {
    const int M = exact_ ? kExactPrecision : std::min(e, q) * (N + 1) - w - 1;
    if (!exact_ && M < r) throw Error(ErrorCode::kNeedsRegeneration, "precision exhausted in the expansion");
    Jet2::CoeffMap out;
    for (const auto& [k, c] : terms) {
      const int alpha = e * k.first + q * k.second - w;
      if (alpha > M) continue;
      Rational cu = c * qpow(u, a * k.first + b * k.second);
      auto row = binomial_row(k.second);
      for (int beta = 0; beta <= k.second && alpha + beta <= M; ++beta) {
        auto [it, ins] = out.emplace(Key{alpha, beta}, cu * row[beta]);
        if (!ins) {
          it->second += cu * row[beta];
          if (it->second == 0) out.erase(it);
        }
      }
    }
    (void)f;
    if (exact_) {
      int deg = 0;
      for (const auto& [k, c] : out) deg = std::max(deg, k.first + k.second);
      Jet2 j(deg);
      for (const auto& [k, c] : out) j.set(k.first, k.second, c);
      j.set_exact_terms(std::move(out));
      return j;
    }
    Jet2 j(M);
    for (const auto& [k, c] : out) j.set(k.first, k.second, c);
    return j;
  }

  // Simple roots: the branch is the implicit function of f1(s, y1) = 0 over K.
  void terminal(const Jet2& f, const Jet2::CoeffMap& terms, int N, std::shared_ptr<const UPoly> modulus, long a,
                long b, int e, int q, int w, const Param& param) {
    (void)f;
    const AlgebraicElement one(modulus, Rational(1));
    const AlgebraicElement zero(modulus, Rational(0));
    const AlgebraicElement u(modulus, UPoly::monomial(1));
    const int Eout = e * param.E;
    const int kout = e * param.kB + q;
    const int target = std::max(1, options_.series_terms * Eout + 1 - kout);
    const int avail = exact_ ? kExactPrecision : std::min(e, q) * (N + 1) - w - 1;
    const int T = std::min(target, avail);
    if (T < 1) throw Error(ErrorCode::kNeedsRegeneration, "precision exhausted before a simple branch");

    // f1 coefficients over K for alpha, beta <= T.
    std::vector<std::vector<AlgebraicElement>> F1(T + 1, std::vector<AlgebraicElement>(T + 1, zero));
    std::map<long, AlgebraicElement> upow;
    auto power = [&](long n) -> const AlgebraicElement& {
      auto it = upow.find(n);
      if (it == upow.end()) it = upow.emplace(n, u.pow(n)).first;
      return it->second;
    };
    for (const auto& [k, c] : terms) {
      const int alpha = e * k.first + q * k.second - w;
      if (alpha > T) continue;
      AlgebraicElement cu = power(a * k.first + b * k.second) * AlgebraicElement(modulus, c);
      auto row = binomial_row(k.second);
      for (int beta = 0; beta <= k.second && beta <= T; ++beta)
        F1[alpha][beta] = F1[alpha][beta] + cu * AlgebraicElement(modulus, row[beta]);
    }
    const AlgebraicElement inv = F1[0][1].inverse();
    KSeries y1(T + 1, zero);  // y1[0] = 0
    for (int n = 1; n <= T; ++n) {
      // Residual [s^n] f1(s, y1) with y1 known below s^n.
      AlgebraicElement res = zero;
      KSeries pw(n + 1, zero);
      pw[0] = one;
      for (int beta = 0; beta <= n; ++beta) {
        if (beta > 0) {
          KSeries next(n + 1, zero);
          for (int i = 0; i <= n; ++i) {
            if (pw[i].is_zero()) continue;
            for (int j = 1; i + j <= n && j < n; ++j)
              if (!y1[j].is_zero()) next[i + j] = next[i + j] + pw[i] * y1[j];
          }
          pw = std::move(next);
        }
        for (int alpha = 0; alpha <= n; ++alpha)
          if (!F1[alpha][beta].is_zero() && !pw[n - alpha].is_zero()) res = res + F1[alpha][beta] * pw[n - alpha];
      }
      y1[n] = -(res * inv);
    }

    PuiseuxCycle c;
    c.ramification = Eout;
    c.modulus = modulus;
    c.lambda = AlgebraicElement(modulus, param.lambda) * u.pow(a * param.E);
    c.precision = kout + T + 1;
    c.y.assign(c.precision, zero);
    for (const auto& [n, coeff] : param.A)
      if (e * n < c.precision) c.y[e * n] = c.y[e * n] + power(a * n) * AlgebraicElement(modulus, coeff);
    AlgebraicElement bk = AlgebraicElement(modulus, param.B) * power(a * param.kB + b);
    for (int n = 0; n <= T; ++n) {
      AlgebraicElement v = n == 0 ? bk : bk * y1[n];
      c.y[kout + n] = c.y[kout + n] + v;
    }
    c.first_slope = param.first_slope ? *param.first_slope : Rational(q, e);
    cycles.push_back(std::move(c));
  }

  void emit_axis(const Param& param, int multiplicity) {
    auto modulus = std::make_shared<const UPoly>(UPoly::linear(0));
    const AlgebraicElement zero(modulus, Rational(0));
    PuiseuxCycle c;
    c.ramification = param.E;
    c.modulus = modulus;
    c.lambda = AlgebraicElement(modulus, param.lambda);
    int top = 0;
    for (const auto& [n, v] : param.A) top = std::max(top, n);
    c.y.assign(top + 1, zero);
    for (const auto& [n, v] : param.A) c.y[n] = c.y[n] + AlgebraicElement(modulus, v);
    c.precision = kExactPrecision;
    c.multiplicity = multiplicity;
    c.multiplicity_certified = exact_;
    c.first_slope = param.first_slope ? *param.first_slope : Rational(-1);  // -1: the axis itself
    cycles.push_back(std::move(c));
  }

  const PuiseuxOptions& options_;
  bool exact_;
};

int fibre_order_of(const Jet2::CoeffMap& m) {
  int d = -1;
  for (const auto& [k, c] : m)
    if (k.first == 0 && (d < 0 || k.second < d)) d = k.second;
  return d;
}

}  // namespace

std::string PuiseuxCycle::describe() const {
  std::ostringstream os;
  os << "x = " << (is_rational() ? to_string(lambda.value().coeff(0)) : "(" + to_string(lambda.value(), "a") + ")")
     << "*s^" << ramification << ", y = ";
  bool first = true;
  for (std::size_t k = 0; k < y.size(); ++k) {
    if (y[k].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << to_string(y[k].value(), "a") << ")*s^" << k;
  }
  if (first) os << "0";
  if (precision < kExactPrecision) os << " + O(s^" << precision << ")";
  if (!is_rational()) os << " over a in Q[a]/(" << to_string(*modulus, "a") << ")";
  os << ", multiplicity " << multiplicity;
  if (!multiplicity_certified) os << " (order-limited)";
  return os.str();
}

int PuiseuxBranchSet::branch_degree() const {
  int n = 0;
  for (const auto& c : cycles) n += c.multiplicity * c.branch_count();
  return n;
}

int fibre_order(const Jet2& g) { return fibre_order_of(g.is_exact() ? g.exact_terms() : g.coefficients()); }

LinearChart regular_chart(const Jet2& f) {
  if (fibre_order(f) >= 0) return LinearChart::identity();
  if (fibre_order(apply_chart(f, LinearChart::swap())) >= 0) return LinearChart::swap();
  for (int lambda = 1;; ++lambda) {
    LinearChart ch = LinearChart::shear(lambda);
    if (fibre_order(apply_chart(f, ch)) >= 0) return ch;
    if (lambda > f.order() + 2) throw Error(ErrorCode::kNeedsRegeneration, "germ vanishes to its full order");
  }
}


namespace {

Polynomial exact_polynomial(const Jet2& f) {
  Polynomial p(leaf_ring());
  for (const auto& [k, c] : f.exact_terms()) {
    Monomial m(2);
    m[0] = k.first;
    m[1] = k.second;
    p.add_term(m, c);
  }
  return p;
}

using KVec = std::vector<AlgebraicElement>;

KVec truncated_product(const KVec& a, const KVec& b, int len, const AlgebraicElement& zero) {
  KVec r(len, zero);
  for (int i = 0; i < static_cast<int>(a.size()) && i < len; ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; j < static_cast<int>(b.size()) && i + j < len; ++j)
      if (!b[j].is_zero()) r[i + j] = r[i + j] + a[i] * b[j];
  }
  return r;
}

int s_valuation(const KVec& y) {
  for (std::size_t k = 0; k < y.size(); ++k)
    if (!y[k].is_zero()) return static_cast<int>(k);
  return kExactPrecision;
}

}  // namespace

PuiseuxBranchSet newton_puiseux(const Jet2& f, const PuiseuxOptions& options) {
  PuiseuxBranchSet out;
  if (f.is_exact() && f.exact_terms().empty())
    throw Error(ErrorCode::kInvalidArgument, "Puiseux expansion of the zero germ");
  if (f.coeff(0, 0) != 0) {
    out.exact = f.is_exact();
    out.jet_order = f.order();
    return out;
  }

  if (f.is_exact()) {
    out.exact = true;
    out.jet_order = f.order();
    const Jet2 full = f.at_order(exact_polynomial(f).total_degree());
    out.mu = full.valuation();
    out.chart = options.chart ? *options.chart : regular_chart(full);
    Jet2 fc = apply_chart(f, out.chart);
    Polynomial pc = exact_polynomial(fc);
    out.fibre_degree = fibre_order(fc);
    if (out.fibre_degree < 0) throw Error(ErrorCode::kInvalidArgument, "germ is not regular in the chosen chart");
    auto parts = squarefree_decomposition(pc);
    for (std::size_t m = 0; m < parts.size(); ++m) {
      const Polynomial& h = parts[m];
      if (h.is_constant()) continue;
      Jet2 hj = Jet2::from_polynomial(h, static_cast<int>(h.total_degree()));
      if (hj.coeff(0, 0) != 0) continue;
      Expander ex(options, true);
      ex.expand(hj, fibre_order(hj), Param{});
      for (auto& c : ex.cycles) {
        c.multiplicity *= static_cast<int>(m + 1);
        out.cycles.push_back(std::move(c));
      }
    }
    return out;
  }

  if (!f.can_regenerate() && f.is_zero())
    throw Error(ErrorCode::kInconclusive, "germ vanishes to its full order and cannot be regenerated");
  int N = std::max(f.order(), 1);
  std::optional<LinearChart> chart = options.chart;
  for (;;) {
    Jet2 g = f.at_order(N);
    try {
      if (!chart) chart = regular_chart(g);
      Jet2 gc = apply_chart(g, *chart);
      const int d = fibre_order(gc);
      if (d < 0) throw Error(ErrorCode::kNeedsRegeneration, "germ not regular at this order");
      Expander ex(options, false);
      ex.expand(gc, d, Param{});
      out.cycles = std::move(ex.cycles);
      out.order_limited = ex.order_limited;
      out.chart = *chart;
      out.fibre_degree = d;
      out.mu = g.valuation();
      out.jet_order = N;
      return out;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNeedsRegeneration) throw;
    }
    if (!f.can_regenerate() || N >= options.max_order)
      throw Error(ErrorCode::kInconclusive,
                  "Puiseux expansion not determined at jet order " + std::to_string(N));
    N = std::min(options.max_order, std::max(N + 1, N * 3 / 2));
  }
}

YPoly class_weierstrass(const PuiseuxCycle& c, int x_precision) {
  const int E = c.ramification;
  const int D = E * c.class_degree();
  const AlgebraicElement zero(c.modulus, Rational(0));
  // A polynomial y gives polynomial power sums: the factor is then exact.
  const bool exact = c.precision >= kExactPrecision;
  int ydeg = 0;
  for (std::size_t k = 0; k < c.y.size(); ++k)
    if (!c.y[k].is_zero()) ydeg = static_cast<int>(k);
  const int X = exact ? (D * ydeg) / E + 1 : std::min(x_precision, (c.precision - 1) / E + 1);
  const int len = E * (X - 1) + 1;  // s-coefficients needed
  const AlgebraicElement lambda_inv = c.lambda.inverse();
  KVec ytr(c.y.begin(), c.y.begin() + std::min<std::size_t>(c.y.size(), len));
  std::vector<XSeries> p(D + 1);
  KVec ym{AlgebraicElement(c.modulus, Rational(1))};
  for (int m = 1; m <= D; ++m) {
    ym = truncated_product(ym, ytr, len, zero);
    XSeries s;
    s.precision = X;
    s.c.assign(X, Rational(0));
    AlgebraicElement li(c.modulus, Rational(1));
    for (int k = 0; k < X; ++k) {
      if (E * k < static_cast<int>(ym.size()) && !ym[E * k].is_zero()) s.c[k] = E * (ym[E * k] * li).trace();
      li = li * lambda_inv;
    }
    s.trim();
    if (exact) s.precision = kExactPrecision;
    p[m] = s;
  }
  std::vector<XSeries> e(D + 1);
  e[0] = XSeries::constant(1);
  for (int k = 1; k <= D; ++k) {
    XSeries acc = XSeries::zero(exact ? kExactPrecision : X);
    for (int i = 1; i <= k; ++i) {
      XSeries t = e[k - i] * p[i];
      acc = (i % 2 == 1) ? acc + t : acc - t;
    }
    for (auto& v : acc.c) v /= k;
    if (!exact) acc = cap(acc, X);
    e[k] = acc;
  }
  YPoly w;
  w.coef.assign(D + 1, XSeries::zero());
  for (int k = 0; k <= D; ++k) {
    XSeries t = e[k];
    if (k % 2 == 1)
      for (auto& v : t.c) v = -v;
    w.coef[D - k] = t;
  }
  w.coef[D] = XSeries::constant(1);
  return w;
}

YPoly branch_product(const std::vector<PuiseuxCycle>& cycles, int x_precision) {
  YPoly r;
  r.coef = {XSeries::constant(1)};
  for (const auto& c : cycles) r = r * pow(class_weierstrass(c, x_precision), static_cast<unsigned>(c.multiplicity));
  return r;
}

CycleSubstitution substitute_cycle(const PuiseuxCycle& c, const Jet2& g_chart, int max_terms) {
  const AlgebraicElement zero(c.modulus, Rational(0));
  const int E = c.ramification;
  const int vY = s_valuation(c.y);
  int R = std::min(c.precision, max_terms);
  if (!g_chart.is_exact()) R = std::min(R, std::min(E, vY) * (g_chart.order() + 1));
  const auto& terms = g_chart.is_exact() ? g_chart.exact_terms() : g_chart.coefficients();
  KVec ytr(c.y.begin(), c.y.begin() + std::min<std::size_t>(c.y.size(), std::max(R, 0)));
  CycleSubstitution out;
  out.precision = R;
  out.coeffs.assign(std::max(R, 0), zero);
  std::vector<KVec> ypow{KVec{AlgebraicElement(c.modulus, Rational(1))}};
  std::map<int, AlgebraicElement> lpow;
  for (const auto& [k, coeff] : terms) {
    const int shift = E * k.first;
    if (shift >= R) continue;
    while (static_cast<int>(ypow.size()) <= k.second) ypow.push_back(truncated_product(ypow.back(), ytr, R, zero));
    auto it = lpow.find(k.first);
    if (it == lpow.end()) it = lpow.emplace(k.first, c.lambda.pow(k.first)).first;
    AlgebraicElement scale = it->second * AlgebraicElement(c.modulus, coeff);
    const KVec& yp = ypow[k.second];
    for (int n = 0; n < static_cast<int>(yp.size()) && shift + n < R; ++n)
      if (!yp[n].is_zero()) out.coeffs[shift + n] = out.coeffs[shift + n] + scale * yp[n];
  }
  return out;
}

UPoly vanishing_factor(const PuiseuxCycle& c, const Jet2& g_chart, int* precision) {
  CycleSubstitution sub = substitute_cycle(c, g_chart);
  if (precision) *precision = sub.precision;
  UPoly f = monic(*c.modulus);
  for (const auto& v : sub.coeffs) {
    if (f.degree() == 0) break;
    if (!v.is_zero()) f = gcd(f, v.value());
  }
  return monic(f);
}

PuiseuxCycle restrict_cycle(const PuiseuxCycle& c, const UPoly& factor) {
  if (factor.degree() < 1 || !divmod(*c.modulus, factor).second.is_zero())
    throw Error(ErrorCode::kInvalidArgument, "restriction factor must divide the class modulus");
  auto modulus = std::make_shared<const UPoly>(monic(factor));
  auto reduce = [&](const AlgebraicElement& a) { return AlgebraicElement(modulus, divmod(a.value(), *modulus).second); };
  PuiseuxCycle r = c;
  r.modulus = modulus;
  r.lambda = reduce(c.lambda);
  for (auto& v : r.y) v = reduce(v);
  return r;
}

}  // namespace leafmult
