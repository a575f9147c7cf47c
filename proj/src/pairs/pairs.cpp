#include "leafmult/pairs/pairs.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <sstream>

#include "leafmult/error.hpp"
#include "leafmult/germ/local_basis.hpp"
#include "leafmult/germ/split.hpp"
#include "leafmult/ideal/ideal_ops.hpp"

namespace leafmult {
namespace {

// Membership in a local ideal of finite multiplicity, decided in the
// truncation at the certified order; a truncated test otherwise.
class LocalIdeal {
 public:
  LocalIdeal(const std::vector<Jet2>& gens, int fallback_order) {
    try {
      LocalMultiplicity lm = local_multiplicity(gens);
      if (lm.finite()) {
        finite_ = true;
        unit_ = *lm.value == 0;
        order_ = lm.certificate.order;
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kInconclusive) throw;
    }
    if (!finite_) order_ = fallback_order;
    if (!unit_) {
      std::vector<Jet2> at;
      for (const auto& g : gens) at.push_back(g.at_order(order_));
      sb_ = truncated_standard_basis(at, order_);
    }
  }

  bool contains(const Jet2& f) const { return unit_ || truncated_normal_form(f.at_order(order_), sb_).empty(); }
  int order() const { return order_; }
  bool finite() const { return finite_; }

 private:
  bool finite_ = false, unit_ = false;
  int order_ = 0;
  TruncatedStandardBasis sb_;
};

std::vector<std::string> texts(const IdealPresentation& I) {
  std::vector<std::string> out;
  for (const auto& g : I.generators()) out.push_back(to_string(g));
  return out;
}

int max_degree(const IdealPresentation& I) {
  int d = 0;
  for (const auto& g : I.generators()) d = std::max(d, g.total_degree());
  return d;
}

bool member(const Polynomial& f, const IdealPresentation& I, const GroebnerOptions& options) {
  if (f.is_zero()) return true;
  if (I.is_zero()) return false;
  return is_member(f, groebner(I, MonomialOrder::degrevlex(I.ring()->size()), options));
}

int jet_order_of(const NoetherianPairState& s) { return std::max(s.certificate_order, 1); }

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::kBudget, "bound exceeds 64 bits");
  return r;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::kBudget, "bound exceeds 64 bits");
  return r;
}

}  // namespace

std::string to_string(LedgerStep::Kind kind) {
  switch (kind) {
    case LedgerStep::Kind::kRadical: return "radical";
    case LedgerStep::Kind::kPoisson: return "poisson";
    case LedgerStep::Kind::kJacobian: return "jacobian";
  }
  return "?";
}

std::string to_string(BoundLedger::Status status) {
  switch (status) {
    case BoundLedger::Status::kPointExcluded: return "point-excluded";
    case BoundLedger::Status::kExhaustedBudget: return "exhausted-budget";
    case BoundLedger::Status::kRadicalPartial: return "radical-partial";
  }
  return "?";
}

std::uint64_t BoundLedger::compose(std::uint64_t final_multiplicity) const {
  std::uint64_t v = final_multiplicity;
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) v = checked_add(checked_mul(it->transfer.a, v), it->transfer.b);
  return v;
}

NoetherianPairState make_pair(const IdealPresentation& global, std::vector<Jet2> local, ContextPtr ctx, int order,
                              std::vector<std::string> labels) {
  if (!ctx) throw Error(ErrorCode::kInvalidArgument, "pair needs a foliation context");
  if (global.ring() && global.ring() != ctx->ring())
    throw Error(ErrorCode::kRingMismatch, "global ideal and foliation live in different rings");
  NoetherianPairState s;
  s.global = global.ring() ? global : IdealPresentation(ctx->ring(), {});
  s.ctx = ctx;
  s.certificate_order = order;
  labels.resize(local.size());
  s.local_labels = std::move(labels);
  s.local = std::move(local);
  std::vector<Polynomial> nonzero;
  for (const auto& g : s.global.generators())
    if (!g.is_zero()) nonzero.push_back(g);
  if (nonzero.empty()) return s;
  if (s.local.empty()) throw Error(ErrorCode::kHypothesis, "leaf jet of " + to_string(nonzero[0]) + " is not in the zero ideal");
  LocalIdeal li(s.local, order);
  for (const auto& g : nonzero)
    if (!li.contains(leaf_jet(ctx, g, order)))
      throw Error(ErrorCode::kHypothesis, "leaf jet of " + to_string(g) + " is not in the local ideal");
  s.certificate_order = std::max(order, li.order());
  return s;
}

bool point_excluded(const NoetherianPairState& s) {
  for (const auto& g : s.global.generators())
    if (evaluate(g, s.ctx->point()) != 0) return true;
  return false;
}

std::pair<NoetherianPairState, LedgerStep> radical_extension(const NoetherianPairState& s, const PairOptions& options) {
  RadicalOptions ro;
  ro.exponent_cap = options.exponent_cap;
  ro.groebner = options.groebner;
  RadicalResult r = attempt_radical(s.global, ro);
  LedgerStep step;
  step.kind = LedgerStep::Kind::kRadical;
  step.jet_order = jet_order_of(s);
  step.global_before = texts(s.global);
  step.degree_before = max_degree(s.global);
  NoetherianPairState out = s;
  out.global = r.radical;
  out.radical_certified = r.status == RadicalResult::Status::kExact;
  std::uint64_t M = 1;
  const int N = jet_order_of(s);
  for (const auto& e : r.certificate.entries) {
    step.radical_exponents.emplace_back(to_string(e.generator), e.exponent.value_or(0));
    if (!e.exponent) {
      step.sound = false;
      continue;
    }
    if (*e.exponent >= 2) {
      M += *e.exponent - 1;
      out.local.push_back(leaf_jet(s.ctx, e.generator, N));
      out.local_labels.push_back("leaf_jet(" + to_string(e.generator) + ")");
      step.local_added.push_back(out.local_labels.back());
    }
  }
  step.transfer = {checked_mul(M, M), 0};
  step.global_after = texts(out.global);
  step.degree_after = max_degree(out.global);
  std::ostringstream ev;
  ev << "method " << r.method << (out.radical_certified ? " (exact)" : " (partial)") << "; M = " << M;
  if (!step.sound) ev << "; some generator has no certified exponent up to " << r.certificate.cap;
  step.evidence = ev.str();
  return {std::move(out), std::move(step)};
}

std::pair<NoetherianPairState, LedgerStep> poisson_extension(const NoetherianPairState& s, const Polynomial& f,
                                                             const Polynomial& g, const PairOptions& options) {
  if (!member(f, s.global, options.groebner) || !member(g, s.global, options.groebner))
    throw Error(ErrorCode::kHypothesis, "Poisson extension needs both functions in the ideal");
  Polynomial b = poisson(*s.ctx, f, g);
  LedgerStep step;
  step.kind = LedgerStep::Kind::kPoisson;
  step.jet_order = jet_order_of(s);
  step.global_before = texts(s.global);
  step.degree_before = max_degree(s.global);
  step.poisson_f = to_string(f);
  step.poisson_g = to_string(g);
  step.poisson_bracket = to_string(b);
  step.transfer = {1, 1};
  NoetherianPairState out = s;
  std::vector<Polynomial> gens = s.global.generators();
  if (!b.is_zero()) {
    gens.push_back(b);
    out.local.push_back(leaf_jet(s.ctx, b, jet_order_of(s)));
    out.local_labels.push_back("leaf_jet({" + step.poisson_f + ", " + step.poisson_g + "})");
    step.local_added.push_back(out.local_labels.back());
  }
  out.global = IdealPresentation(s.global.ring(), std::move(gens));
  out.radical_certified = b.is_zero() && s.radical_certified;
  step.global_after = texts(out.global);
  step.degree_after = max_degree(out.global);
  step.evidence = "{F, G} = " + step.poisson_bracket;
  return {std::move(out), std::move(step)};
}

std::pair<NoetherianPairState, LedgerStep> jacobian_extension(const NoetherianPairState& s, const Polynomial& F,
                                                              const PairOptions& options) {
  if (!s.radical_certified) throw Error(ErrorCode::kHypothesis, "Jacobian extension needs a radical-certified ideal");
  if (!member(F, s.global, options.groebner))
    throw Error(ErrorCode::kHypothesis, "Jacobian extension needs F in the ideal");
  const int N = jet_order_of(s);
  Jet2 fL = leaf_jet(s.ctx, F, N);
  std::vector<Jet2> locus;
  for (const auto& g : s.global.generators()) locus.push_back(leaf_jet(s.ctx, g, N));
  LocusSplit ls = split_on_locus(fL, locus);
  if (ls.h.coeff(0, 0) != 0)
    throw Error(ErrorCode::kHypothesis, "F has no branch on the leaf trace of V(I) through the point");
  LocalIdeal li(s.local, N);
  if (!li.contains(ls.f))
    throw Error(ErrorCode::kHypothesis, "the part of F off V(I) is not in the local ideal");
  FactorMultiplicities fm = factor_multiplicities(ls.h);

  LedgerStep step;
  step.kind = LedgerStep::Kind::kJacobian;
  step.jet_order = N;
  step.global_before = texts(s.global);
  step.degree_before = max_degree(s.global);
  step.jacobian_f = to_string(F);
  step.jacobian_h = to_string(ls.h);
  step.jacobian_h_reduced = to_string(fm.reduced);
  step.jacobian_k = fm.k;
  step.jacobian_K = fm.K;
  step.jacobian_mu = ls.h.valuation();
  step.jacobian_formula_factor = checked_mul(static_cast<std::uint64_t>(fm.K), std::uint64_t{1} << fm.K);

  NoetherianPairState out = s;
  std::vector<Polynomial> gens = s.global.generators();
  std::vector<Polynomial> added;
  for (int a = fm.k; a >= 0; --a) {
    Polynomial d = s.ctx->iterated_derivative(F, a, fm.k - a);
    if (!d.is_zero()) added.push_back(d);
  }
  gens.insert(gens.end(), added.begin(), added.end());
  out.global = IdealPresentation(s.global.ring(), std::move(gens));
  out.radical_certified = false;
  out.local.push_back(fm.reduced);
  out.local_labels.push_back("h' = " + step.jacobian_h_reduced);
  step.local_added.push_back(out.local_labels.back());

  // Least n with (h')^n in the old local ideal, searched up to the formula factor.
  Jet2 power = fm.reduced;
  for (std::uint64_t n = 1; n <= step.jacobian_formula_factor; ++n) {
    if (n > 1) power = power * fm.reduced;
    if (li.finite() && li.contains(power)) {
      step.jacobian_certified_exponent = static_cast<unsigned>(n);
      break;
    }
  }
  const std::uint64_t factor = step.jacobian_certified_exponent ? *step.jacobian_certified_exponent
                                                                 : step.jacobian_formula_factor;
  step.transfer = {factor, 0};

  // The new derivatives must not all vanish on a least-multiplicity branch of h.
  PuiseuxBranchSet bs = newton_puiseux(ls.h);
  step.strict_progress = true;
  for (const auto& c : bs.cycles) {
    if (c.multiplicity != fm.k) continue;
    bool off = false;
    for (const auto& d : added) {
      UPoly v = vanishing_factor(c, apply_chart(leaf_jet(s.ctx, d, N), bs.chart));
      if (v.degree() < c.class_degree()) {
        off = true;
        break;
      }
    }
    step.strict_progress = step.strict_progress && off;
  }
  step.global_after = texts(out.global);
  step.degree_after = max_degree(out.global);
  std::ostringstream ev;
  ev << "h = " << step.jacobian_h << ", h' = " << step.jacobian_h_reduced << ", k = " << fm.k << ", K = " << fm.K
     << ", mu = " << step.jacobian_mu << ", K*2^K = " << step.jacobian_formula_factor << ", certified n = ";
  if (step.jacobian_certified_exponent) ev << *step.jacobian_certified_exponent;
  else ev << "none";
  ev << (step.strict_progress ? "; V(J) loses the least-multiplicity branches" : "; no strict progress");
  step.evidence = ev.str();
  return {std::move(out), std::move(step)};
}

std::optional<std::pair<Polynomial, Polynomial>> find_transverse_pair(const NoetherianPairState& s,
                                                                      std::uint64_t seed, int retries,
                                                                      const GroebnerOptions& options) {
  std::vector<Polynomial> gens;
  for (const auto& g : s.global.generators())
    if (!g.is_zero()) gens.push_back(g);
  if (gens.empty()) throw Error(ErrorCode::kInvalidArgument, "transverse pair of the zero ideal");
  auto works = [&](const Polynomial& f, const Polynomial& g) {
    Polynomial b = poisson(*s.ctx, f, g);
    return !b.is_zero() && !radical_membership(b, s.global, options);
  };
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (works(gens[i], gens[j])) return std::make_pair(gens[i], gens[j]);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (int attempt = 0; attempt < retries; ++attempt) {
    Polynomial f(s.global.ring()), g(s.global.ring());
    for (const auto& x : gens) {
      f = f + x * Rational(coeff(rng));
      g = g + x * Rational(coeff(rng));
    }
    if (works(f, g)) return std::make_pair(f, g);
  }
  return std::nullopt;
}

ReductionResult isolated_locus_reduction(const NoetherianPairState& s, const PairOptions& options) {
  ReductionResult r;
  r.state = s;
  const std::size_t rounds = 2 * s.ctx->ring()->size();
  try {
    for (std::size_t round = 0; round < rounds; ++round) {
      auto [rad, rstep] = radical_extension(r.state, options);
      r.partial = r.partial || !rstep.sound || !rad.radical_certified;
      r.state = std::move(rad);
      r.steps.push_back(std::move(rstep));
      if (point_excluded(r.state)) return r;
      auto pair = find_transverse_pair(r.state, options.seed + round, options.transverse_retries, options.groebner);
      if (!pair) return r;
      auto [po, pstep] = poisson_extension(r.state, pair->first, pair->second, options);
      r.state = std::move(po);
      r.steps.push_back(std::move(pstep));
      if (point_excluded(r.state)) return r;
    }
    r.budget_exhausted = true;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kBudget) throw;
    r.budget_exhausted = true;
  }
  return r;
}

BoundReport nonisolated_bound(const Polynomial& F, const Polynomial& G, const ContextPtr& ctx,
                              const PairOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  BoundReport rep;
  const int N = options.jet_order > 0 ? options.jet_order : default_jet_order(F, G);
  rep.jet_order = N;
  Jet2 fL = leaf_jet(ctx, F, N), gL = leaf_jet(ctx, G, N);
  auto vanishes = [](const Jet2& j) { return j.is_exact() && j.exact_terms().empty(); };
  if (vanishes(fL) || vanishes(gL)) throw Error(ErrorCode::kHypothesis, "F or G vanishes identically on the leaf");

  GermSplit split = split_common(fL, gL);
  const bool f_unit = split.f.coeff(0, 0) != 0, g_unit = split.g.coeff(0, 0) != 0;
  rep.isolated = split.h_f.coeff(0, 0) != 0;
  if (!rep.isolated && f_unit && g_unit)
    throw Error(ErrorCode::kHypothesis, "common branch set equals germ: F and G share every branch at the point");
  rep.f_local = to_string(split.f);
  rep.g_local = to_string(split.g);
  rep.h_f = to_string(split.h_f);
  rep.h_g = to_string(split.h_g);
  std::vector<Jet2> local = rep.isolated ? std::vector<Jet2>{fL, gL} : std::vector<Jet2>{split.f, split.g};
  std::vector<std::string> labels = rep.isolated ? std::vector<std::string>{"leaf_jet(F)", "leaf_jet(G)"}
                                                 : std::vector<std::string>{"f", "g"};
  try {
    LocalMultiplicity lm = local_multiplicity(local);
    if (lm.finite()) rep.direct_value = *lm.value;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kInconclusive) throw;
  }

  NoetherianPairState state = make_pair(IdealPresentation(ctx->ring(), {F, G}), local, ctx, N, labels);
  int jacobian_cap = 0;
  if (!rep.isolated) jacobian_cap = factor_multiplicities(split.h_f).branch_count;
  BoundLedger& ledger = rep.ledger;
  bool partial = false;
  for (int jac = 0;; ++jac) {
    ReductionResult red = isolated_locus_reduction(state, options);
    partial = partial || red.partial;
    for (auto& st : red.steps) ledger.steps.push_back(std::move(st));
    state = std::move(red.state);
    if (point_excluded(state)) {
      ledger.status = BoundLedger::Status::kPointExcluded;
      break;
    }
    if (red.budget_exhausted) {
      ledger.detail = "isolated-locus reduction did not stabilize";
      break;
    }
    if (!state.radical_certified) {
      ledger.status = BoundLedger::Status::kRadicalPartial;
      ledger.detail = "radical not certified before a Jacobian step";
      break;
    }
    if (jac >= jacobian_cap) {
      ledger.detail = "Jacobian step cap reached with the point still in V(I)";
      break;
    }
    try {
      auto [next, step] = jacobian_extension(state, F, options);
      state = std::move(next);
      ledger.steps.push_back(std::move(step));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kHypothesis && e.code() != ErrorCode::kBudget) throw;
      ledger.detail = std::string("Jacobian step not applicable: ") + e.what();
      break;
    }
  }
  for (const auto& st : ledger.steps)
    if (!st.sound) partial = true;
  if (ledger.status == BoundLedger::Status::kPointExcluded) {
    if (partial && std::any_of(ledger.steps.begin(), ledger.steps.end(), [](const LedgerStep& st) { return !st.sound; })) {
      ledger.status = BoundLedger::Status::kRadicalPartial;
      ledger.detail = "a radical step lacks a certified exponent";
    } else {
      rep.bound = ledger.compose(0);
    }
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace leafmult
