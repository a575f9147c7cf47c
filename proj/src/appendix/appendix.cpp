#include "leafmult/appendix/appendix.hpp"

#include <algorithm>
#include <sstream>

#include "leafmult/error.hpp"
#include "leafmult/germ/local_basis.hpp"
#include "leafmult/germ/split.hpp"
#include "leafmult/pairs/pairs.hpp"

namespace leafmult {
namespace {

YPoly one_ypoly() {
  YPoly r;
  r.coef = {XSeries::constant(1)};
  return r;
}

YPoly fs_ypoly(const PuiseuxBranchSet& bs, const MonodromicSubset& s, int x_precision) {
  YPoly r = one_ypoly();
  for (std::size_t i = 0; i < bs.cycles.size(); ++i)
    if (s.multiplicity[i] > 0)
      r = r * pow(class_weierstrass(bs.cycles[i], x_precision), static_cast<unsigned>(s.multiplicity[i]));
  return r;
}

int jet_known_order(const YPoly& p) {
  Jet2 j = to_jet(p);
  return j.is_exact() ? kExactPrecision : j.order();
}

// g = q w + r with r = 0 to the known precision; returns the order reached or -1.
int division_order(const YPoly& g, const YPoly& w) {
  WeierstrassDivision div = weierstrass_divide(g, w);
  for (const auto& c : div.remainder.coef)
    if (!c.known_zero()) return -1;
  int order = std::min(jet_known_order(w), div.remainder.coef.empty() ? kExactPrecision : jet_known_order(div.remainder));
  return order;
}

}  // namespace

std::string MonodromicSubset::describe(const PuiseuxBranchSet& bs) const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < multiplicity.size(); ++i) {
    if (multiplicity[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << multiplicity[i] << " x [" << bs.cycles[i].describe() << "]";
  }
  return os.str();
}

std::vector<MonodromicSubset> enumerate_monodromic(const PuiseuxBranchSet& bs) {
  std::vector<MonodromicSubset> out;
  MonodromicSubset cur;
  cur.multiplicity.assign(bs.cycles.size(), 0);
  // Odometer over 0..m_i for every cycle.
  for (;;) {
    std::size_t i = 0;
    while (i < cur.multiplicity.size() && cur.multiplicity[i] == bs.cycles[i].multiplicity) cur.multiplicity[i++] = 0;
    if (i == cur.multiplicity.size()) break;
    ++cur.multiplicity[i];
    out.push_back(cur);
  }
  return out;
}

Jet2 construct_FS(const PuiseuxBranchSet& bs, const MonodromicSubset& s, int x_precision) {
  if (s.multiplicity.size() != bs.cycles.size()) throw Error(ErrorCode::kInvalidArgument, "subset does not match the branch set");
  for (std::size_t i = 0; i < s.multiplicity.size(); ++i)
    if (s.multiplicity[i] < 0 || s.multiplicity[i] > bs.cycles[i].multiplicity)
      throw Error(ErrorCode::kInvalidArgument, "subset multiplicity exceeds the cycle multiplicity");
  return apply_chart(to_jet(fs_ypoly(bs, s, x_precision)), bs.chart.inverse());
}

ExtensionWitness construct_H(const Polynomial& F, const IdealPresentation& I, const ContextPtr& ctx,
                             const AppendixOptions& options) {
  const int N = options.jet_order > 0 ? options.jet_order : 2 * std::max(F.total_degree(), 1) + 8;
  std::vector<Polynomial> gens;
  for (const auto& g : I.generators())
    if (!g.is_zero()) gens.push_back(g);
  if (gens.empty()) throw Error(ErrorCode::kHypothesis, "the zero ideal has no leaf trace to cover");
  if (!is_member(F, groebner(I, MonomialOrder::degrevlex(I.ring()->size()), options.groebner)))
    throw Error(ErrorCode::kHypothesis, "F is not in I");
  std::vector<Jet2> locus;
  for (const auto& g : gens) locus.push_back(leaf_jet(ctx, g, N));
  // Non-isolated: the leaf trace of V(I) is a curve through the point, and
  // no bracket of elements of I cuts it down.
  LocalMultiplicity lm = local_multiplicity(locus);
  if (lm.finite()) throw Error(ErrorCode::kHypothesis, "the intersection of V(I) with the leaf is isolated at the point");
  NoetherianPairState s = make_pair(I, locus, ctx, N);
  if (find_transverse_pair(s, 0, 8, options.groebner))
    throw Error(ErrorCode::kHypothesis, "V(I) has isolated intersections with the foliation");

  ExtensionWitness w;
  PuiseuxOptions po;
  po.series_terms = options.series_terms;
  LocusSplit ls = split_on_locus(leaf_jet(ctx, F, N), locus, po);
  w.h = ls.h;
  if (w.h.coeff(0, 0) != 0) throw Error(ErrorCode::kHypothesis, "F has no branch on the leaf trace of V(I)");
  w.mu = w.h.valuation();
  w.branches = newton_puiseux(w.h, po);
  w.subsets = enumerate_monodromic(w.branches);
  w.factor_count = static_cast<int>(w.subsets.size());

  const int X = options.series_terms + 1;
  YPoly hy = to_ypoly(apply_chart(w.h, w.branches.chart));
  YPoly Hy = one_ypoly();
  for (const auto& sub : w.subsets) {
    YPoly fs = fs_ypoly(w.branches, sub, X);
    w.fs_divides_h.push_back(division_order(hy, fs) >= 0);
    Hy = Hy * fs;
  }
  w.H = apply_chart(to_jet(Hy), w.branches.chart.inverse());

  YPoly hpow = pow(hy, 1u << w.mu);
  w.divisibility_order = division_order(hpow, Hy);
  w.divides = w.divisibility_order >= 0;

  PuiseuxBranchSet trace = common_branches(locus, po);
  w.vanishes = !trace.cycles.empty();
  w.vanishing_order = kExactPrecision;
  Jet2 H_trace = apply_chart(w.H, trace.chart);
  for (const auto& c : trace.cycles) {
    w.trace_branches.push_back(c.describe());
    CycleSubstitution sub = substitute_cycle(c, H_trace, 4 * X);
    w.vanishing_order = std::min(w.vanishing_order, sub.precision);
    for (const auto& v : sub.coeffs)
      if (!v.is_zero()) w.vanishes = false;
  }
  return w;
}

}  // namespace leafmult
