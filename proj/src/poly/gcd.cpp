// Multivariate gcd over Q: content/primitive-part recursion on the highest
// variable present, with a subresultant PRS at each level.

#include <algorithm>

#include "leafmult/error.hpp"
#include "leafmult/poly/polynomial.hpp"

namespace leafmult {
namespace {

int main_variable(const Polynomial& p) {
  int v = -1;
  for (const auto& [m, c] : p.terms())
    for (std::size_t i = m.size(); i-- > 0;)
      if (m[i] != 0) {
        v = std::max(v, static_cast<int>(i));
        break;
      }
  return v;
}

Polynomial leading_coeff_in(const Polynomial& p, std::size_t var) {
  int d = p.degree_in(var);
  Polynomial r(p.ring());
  for (const auto& [m, c] : p.terms()) {
    if (m[var] != d) continue;
    Monomial rest = m;
    rest[var] = 0;
    r.add_term(rest, c);
  }
  return r;
}

Polynomial var_power(const RingPtr& ring, std::size_t var, int e) {
  return Polynomial::term(ring, Monomial::unit_vector(ring->size(), var, e), 1);
}

Polynomial gcd_nonzero(const Polynomial& a, const Polynomial& b);

Polynomial content_in(const Polynomial& p, std::size_t var) {
  Polynomial g(p.ring());
  for (const auto& c : p.coefficients_in(var)) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? make_monic(c) : gcd_nonzero(g, c);
    if (g.is_constant()) return Polynomial::constant(p.ring(), 1);
  }
  return g;
}

Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, std::size_t var) {
  int db = b.degree_in(var);
  int delta = a.degree_in(var) - db + 1;
  Polynomial lcb = leading_coeff_in(b, var);
  Polynomial r = a;
  int steps = 0;
  while (!r.is_zero() && r.degree_in(var) >= db) {
    int dr = r.degree_in(var);
    Polynomial lcr = leading_coeff_in(r, var);
    r = lcb * r - lcr * var_power(r.ring(), var, dr - db) * b;
    ++steps;
  }
  if (delta - steps > 0) r *= pow(lcb, static_cast<unsigned>(delta - steps));
  return r;
}

// Primitive part with respect to `var` of the last nonzero subresultant.
Polynomial subresultant_gcd(Polynomial a, Polynomial b, std::size_t var) {
  if (a.degree_in(var) < b.degree_in(var)) std::swap(a, b);
  Polynomial g = Polynomial::constant(a.ring(), 1);
  Polynomial h = g;
  for (;;) {
    int delta = a.degree_in(var) - b.degree_in(var);
    Polynomial r = pseudo_remainder(a, b, var);
    if (r.is_zero()) break;
    if (r.degree_in(var) == 0) return Polynomial::constant(a.ring(), 1);
    a = std::move(b);
    b = divide_exact(r, g * pow(h, static_cast<unsigned>(delta)));
    g = leading_coeff_in(a, var);
    if (delta == 1) {
      h = g;
    } else if (delta > 1) {
      h = divide_exact(pow(g, static_cast<unsigned>(delta)), pow(h, static_cast<unsigned>(delta - 1)));
    }
  }
  return divide_exact(b, content_in(b, var));
}

Polynomial gcd_nonzero(const Polynomial& a, const Polynomial& b) {
  int va = main_variable(a), vb = main_variable(b);
  int v = std::max(va, vb);
  if (v < 0) return Polynomial::constant(a.ring(), 1);
  auto var = static_cast<std::size_t>(v);
  if (va != v) return gcd_nonzero(a, content_in(b, var));
  if (vb != v) return gcd_nonzero(content_in(a, var), b);
  Polynomial ca = content_in(a, var), cb = content_in(b, var);
  Polynomial c = gcd_nonzero(ca, cb);
  Polynomial pa = divide_exact(a, ca), pb = divide_exact(b, cb);
  return make_monic(c * subresultant_gcd(std::move(pa), std::move(pb), var));
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  require_same_ring(a, b);
  if (a.is_zero()) return make_monic(b);
  if (b.is_zero()) return make_monic(a);
  return make_monic(gcd_nonzero(a, b));
}

Polynomial gcd(std::span<const Polynomial> polys) {
  if (polys.empty()) throw Error(ErrorCode::kInvalidArgument, "gcd of an empty list");
  Polynomial g = make_monic(polys[0]);
  for (std::size_t i = 1; i < polys.size(); ++i) {
    if (g.is_constant() && !g.is_zero()) break;
    g = gcd(g, polys[i]);
  }
  return g;
}

Polynomial squarefree_part(const Polynomial& p) {
  if (p.is_zero()) throw Error(ErrorCode::kInvalidArgument, "squarefree part of zero");
  if (p.is_constant()) return Polynomial::constant(p.ring(), 1);
  Polynomial g = p;
  for (std::size_t v = 0; v < p.nvars() && !g.is_constant(); ++v) {
    if (!p.uses_variable(v)) continue;
    g = gcd(g, derive(p, v));
  }
  return make_monic(divide_exact(p, g));
}

std::vector<Polynomial> squarefree_decomposition(const Polynomial& p) {
  if (p.is_zero()) throw Error(ErrorCode::kInvalidArgument, "squarefree decomposition of zero");
  // P_i = prod_{j>=i} f_j^{j-i+1}; S_i = sqfree(P_i) = prod_{j>=i} f_j; f_i = S_i / S_{i+1}.
  std::vector<Polynomial> factors;
  Polynomial current = make_monic(p);
  Polynomial s = squarefree_part(current);
  while (!current.is_constant()) {
    Polynomial next = divide_exact(current, s);
    Polynomial s_next = next.is_constant() ? Polynomial::constant(p.ring(), 1) : squarefree_part(next);
    factors.push_back(make_monic(divide_exact(s, s_next)));
    current = std::move(next);
    s = std::move(s_next);
  }
  return factors;
}

}  // namespace leafmult
