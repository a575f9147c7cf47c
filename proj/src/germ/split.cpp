#include "leafmult/germ/split.hpp"

#include <algorithm>

#include "leafmult/error.hpp"

namespace leafmult {
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

Jet2 exact_jet(const Polynomial& p) { return Jet2::from_polynomial(p, std::max(p.total_degree(), 0)); }

bool vanishes_at_origin(const Polynomial& p) { return evaluate(p, std::vector<Rational>{0, 0}) == 0; }

// Squarefree levels of p that vanish at the origin, each once. A level may
// keep unit factors; as germs these change nothing.
Polynomial local_radical(const Polynomial& p) {
  Polynomial r = Polynomial::constant(p.ring(), 1);
  for (const auto& part : squarefree_decomposition(p))
    if (!part.is_constant() && vanishes_at_origin(part)) r = r * part;
  return r;
}

// Largest divisor of p whose irreducible factors all divide r.
Polynomial saturating_divisor(const Polynomial& p, const Polynomial& r) {
  Polynomial h = Polynomial::constant(p.ring(), 1);
  Polynomial rest = p;
  for (;;) {
    Polynomial d = gcd(rest, r);
    if (d.is_constant()) return h;
    h = h * d;
    rest = divide_exact(rest, d);
  }
}

bool remainder_vanishes(const YPoly& r) {
  for (const auto& c : r.coef)
    if (c.precision < 1 || !c.known_zero()) return false;
  return true;
}

// Largest m with W^m dividing g to the known precision, and the cofactor.
int divide_out(YPoly& g, const YPoly& w, int cap) {
  int m = 0;
  while (m < cap) {
    WeierstrassDivision div = weierstrass_divide(g, w);
    if (!remainder_vanishes(div.remainder)) break;
    g = std::move(div.quotient);
    ++m;
  }
  return m;
}

int known_order(const Jet2& j) { return j.is_exact() ? kExactPrecision : j.order(); }

Jet2 back_to_leaf(const YPoly& p, const LinearChart& chart) { return apply_chart(to_jet(p), chart.inverse()); }

YPoly one_ypoly() {
  YPoly r;
  r.coef = {XSeries::constant(1)};
  return r;
}

GermSplit split_exact(const Jet2& fL, const Jet2& gL) {
  Polynomial pf = exact_polynomial(fL), pg = exact_polynomial(gL);
  Polynomial c = gcd(pf, pg);
  Polynomial r = c.is_constant() ? c : local_radical(c);
  GermSplit s;
  s.exact = true;
  s.certified_order = kExactPrecision;
  s.method = "exact gcd";
  Polynomial hf = r.is_constant() ? Polynomial::constant(pf.ring(), 1) : saturating_divisor(pf, r);
  Polynomial hg = r.is_constant() ? Polynomial::constant(pg.ring(), 1) : saturating_divisor(pg, r);
  s.h_f = exact_jet(hf);
  s.h_g = exact_jet(hg);
  s.f = exact_jet(divide_exact(pf, hf));
  s.g = exact_jet(divide_exact(pg, hg));
  return s;
}

bool is_zero_germ(const Jet2& j) { return j.is_exact() ? j.exact_terms().empty() : false; }

// Cycles of bs restricted to where every locus jet vanishes.
std::vector<PuiseuxCycle> cycles_on_locus(const PuiseuxBranchSet& bs, const std::vector<Jet2>& locus) {
  std::vector<PuiseuxCycle> out;
  for (const auto& c : bs.cycles) {
    PuiseuxCycle cur = c;
    bool on = true;
    for (const auto& g : locus) {
      if (is_zero_germ(g)) continue;
      UPoly common = vanishing_factor(cur, apply_chart(g, bs.chart));
      if (common.degree() < 1) {
        on = false;
        break;
      }
      if (common.degree() < cur.class_degree()) cur = restrict_cycle(cur, common);
    }
    if (on) out.push_back(std::move(cur));
  }
  return out;
}

}  // namespace

LocusSplit split_on_locus(const Jet2& fL, const std::vector<Jet2>& locus, const PuiseuxOptions& options) {
  if (is_zero_germ(fL)) throw Error(ErrorCode::kInvalidArgument, "split of a zero germ");
  LocusSplit out;
  const bool exact = fL.is_exact() && std::all_of(locus.begin(), locus.end(), [](const Jet2& g) { return g.is_exact(); });
  if (exact) {
    Polynomial pf = exact_polynomial(fL);
    std::vector<Polynomial> ps;
    for (const auto& g : locus)
      if (!g.exact_terms().empty()) ps.push_back(exact_polynomial(g));
    Polynomial h = Polynomial::constant(pf.ring(), 1);
    if (ps.empty()) {
      h = pf;
    } else {
      Polynomial c = gcd(std::span<const Polynomial>(ps));
      if (!c.is_constant()) {
        Polynomial r = local_radical(c);
        if (!r.is_constant()) h = saturating_divisor(pf, r);
      }
    }
    out.exact = true;
    out.certified_order = kExactPrecision;
    out.h = exact_jet(h);
    out.f = exact_jet(divide_exact(pf, h));
    return out;
  }
  PuiseuxBranchSet bs = newton_puiseux(fL, options);
  Jet2 f_at = fL.is_exact() ? fL : fL.at_order(bs.jet_order);
  YPoly fy = to_ypoly(apply_chart(f_at, bs.chart));
  YPoly h = one_ypoly();
  std::vector<Jet2> at;
  for (const auto& g : locus) at.push_back(g.is_exact() || g.order() >= bs.jet_order ? g : g.at_order(bs.jet_order));
  for (const auto& c : cycles_on_locus(bs, at)) {
    YPoly w = class_weierstrass(c, bs.jet_order + 1);
    if (divide_out(fy, w, c.multiplicity) < c.multiplicity)
      throw Error(ErrorCode::kNeedsRegeneration, "branch factor not determined at jet order " + std::to_string(bs.jet_order));
    h = h * pow(w, static_cast<unsigned>(c.multiplicity));
  }
  out.h = back_to_leaf(h, bs.chart);
  out.f = back_to_leaf(fy, bs.chart);
  out.certified_order = std::min(known_order(out.h), known_order(out.f));
  return out;
}

PuiseuxBranchSet common_branches(const std::vector<Jet2>& gens, const PuiseuxOptions& options) {
  auto first = std::find_if(gens.begin(), gens.end(), [](const Jet2& g) { return !is_zero_germ(g); });
  if (first == gens.end()) throw Error(ErrorCode::kInvalidArgument, "common branches of the zero ideal");
  PuiseuxBranchSet bs = newton_puiseux(*first, options);
  bs.cycles = cycles_on_locus(bs, gens);
  return bs;
}

GermSplit split_common(const Jet2& fL, const Jet2& gL, const PuiseuxOptions& options) {
  if ((fL.is_exact() && fL.exact_terms().empty()) || (gL.is_exact() && gL.exact_terms().empty()))
    throw Error(ErrorCode::kInvalidArgument, "split of a zero germ");
  if (fL.is_exact() && gL.is_exact()) return split_exact(fL, gL);

  GermSplit s;
  s.method = "branch matching";
  PuiseuxBranchSet bs = newton_puiseux(fL, options);
  const int N = std::max(bs.jet_order, gL.order());
  Jet2 f_at = fL.is_exact() ? fL : fL.at_order(bs.jet_order);
  Jet2 g_at = gL.is_exact() ? gL : gL.at_order(N);
  YPoly fy = to_ypoly(apply_chart(f_at, bs.chart));
  YPoly gy = to_ypoly(apply_chart(g_at, bs.chart));
  YPoly hf = one_ypoly(), hg = one_ypoly();
  for (const auto& c : bs.cycles) {
    UPoly common = vanishing_factor(c, apply_chart(g_at, bs.chart));
    if (common.degree() < 1) continue;
    PuiseuxCycle sub = common.degree() == c.class_degree() ? c : restrict_cycle(c, common);
    YPoly w = class_weierstrass(sub, N + 1);
    int mf = divide_out(fy, w, c.multiplicity);
    int mg = divide_out(gy, w, N + 1);
    if (mf < c.multiplicity || mg < 1)
      throw Error(ErrorCode::kNeedsRegeneration, "branch matching not determined at jet order " + std::to_string(N));
    hf = hf * pow(w, static_cast<unsigned>(mf));
    hg = hg * pow(w, static_cast<unsigned>(mg));
  }
  s.h_f = back_to_leaf(hf, bs.chart);
  s.h_g = back_to_leaf(hg, bs.chart);
  s.f = back_to_leaf(fy, bs.chart);
  s.g = back_to_leaf(gy, bs.chart);
  s.certified_order = std::min({known_order(s.h_f), known_order(s.h_g), known_order(s.f), known_order(s.g)});
  return s;
}

FactorMultiplicities factor_multiplicities(const Jet2& h, const PuiseuxOptions& options) {
  if (h.coeff(0, 0) != 0) throw Error(ErrorCode::kInvalidArgument, "factor multiplicities need a germ vanishing at the origin");
  FactorMultiplicities out;
  PuiseuxBranchSet bs = newton_puiseux(h, options);
  if (bs.cycles.empty()) throw Error(ErrorCode::kInvalidArgument, "germ has no branch through the origin");
  out.k = bs.cycles.front().multiplicity;
  for (const auto& c : bs.cycles) {
    out.k = std::min(out.k, c.multiplicity);
    out.K = std::max(out.K, c.multiplicity);
    out.branch_count += c.multiplicity * c.class_degree();
  }
  if (h.is_exact()) {
    out.exact = true;
    out.certified_order = kExactPrecision;
    Polynomial p = exact_polynomial(h);
    out.reduced = exact_jet(local_radical(p));
    return out;
  }
  YPoly r = one_ypoly();
  for (const auto& c : bs.cycles) r = r * class_weierstrass(c, bs.jet_order + 1);
  out.reduced = back_to_leaf(r, bs.chart);
  out.certified_order = known_order(out.reduced);
  return out;
}

}  // namespace leafmult
