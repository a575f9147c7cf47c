#include <algorithm>

#include "leafmult/error.hpp"
#include "leafmult/germ/local_basis.hpp"
#include "leafmult/germ/puiseux.hpp"

namespace leafmult {
namespace {

using Key = Jet2::Key;

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

int staircase_degree(const std::vector<Key>& stairs) {
  int d = -1;
  for (const auto& k : stairs) d = std::max(d, k.first + k.second);
  return d;
}

// A component shared by every generator, read off the branches of gens[0].
std::optional<std::string> common_branch(const std::vector<Jet2>& gens) {
  try {
    PuiseuxBranchSet bs = newton_puiseux(gens[0]);
    for (const auto& c : bs.cycles) {
      PuiseuxCycle cur = c;
      bool all = true;
      for (std::size_t i = 1; i < gens.size() && all; ++i) {
        UPoly f = vanishing_factor(cur, apply_chart(gens[i], bs.chart));
        if (f.degree() < 1) all = false;
        else if (f.degree() < cur.class_degree()) cur = restrict_cycle(cur, f);
      }
      if (all) return cur.describe();
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kHypothesis || e.code() == ErrorCode::kRingMismatch) throw;
  }
  return std::nullopt;
}

}  // namespace

LocalMultiplicity local_multiplicity(const std::vector<Jet2>& gens, const LocalMultiplicityOptions& options) {
  if (gens.empty()) throw Error(ErrorCode::kInvalidArgument, "local multiplicity of the zero ideal needs generators");
  LocalMultiplicity out;
  for (const auto& g : gens)
    if (g.coeff(0, 0) != 0) {
      out.value = 0;
      out.certificate.method = "unit";
      out.certificate.witness = to_string(g);
      return out;
    }

  const bool all_exact = std::all_of(gens.begin(), gens.end(), [](const Jet2& g) { return g.is_exact(); });
  if (all_exact) {
    std::vector<Polynomial> ps;
    for (const auto& g : gens)
      if (!g.exact_terms().empty()) ps.push_back(exact_polynomial(g));
    if (ps.empty()) {
      out.certificate.method = "common factor (exact gcd)";
      out.certificate.witness = "0";
      return out;
    }
    Polynomial h = gcd(std::span<const Polynomial>(ps));
    if (!h.is_constant() && evaluate(h, std::vector<Rational>{0, 0}) == 0) {
      out.certificate.method = "common factor (exact gcd)";
      out.certificate.witness = to_string(h);
      return out;
    }
  }

  int N = options.start_order;
  if (N <= 0) {
    N = 1;
    for (const auto& g : gens)
      if (!g.is_zero()) N = std::max(N, g.valuation() + 1);
  }
  std::optional<TruncatedStandardBasis> next;
  for (;;) {
    std::vector<Jet2> at_n, at_next;
    try {
      for (const auto& g : gens) {
        at_n.push_back(g.at_order(N));
        at_next.push_back(g.at_order(N + 1));
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNeedsRegeneration) throw;
      break;
    }
    TruncatedStandardBasis sb = next && next->order == N ? *next : truncated_standard_basis(at_n, N);
    next = truncated_standard_basis(at_next, N + 1);
    const int sd = staircase_degree(sb.staircase);
    if (sb.staircase.size() == next->staircase.size() && sd < N) {
      out.value = sb.staircase.size();
      auto& cert = out.certificate;
      cert.method = "standard basis";
      cert.order = N;
      cert.dim_at_order = sb.staircase.size();
      cert.dim_at_next = next->staircase.size();
      cert.staircase_degree = sd;
      cert.staircase = sb.staircase;
      return out;
    }
    if (N >= options.max_order) break;
    N = std::min(options.max_order, N < 8 ? N + 1 : N + N / 2);
  }

  if (!all_exact) {
    if (auto w = common_branch(gens)) {
      out.certificate.method = "common branch (order-limited)";
      out.certificate.order = N;
      out.certificate.witness = *w;
      return out;
    }
  }
  throw Error(ErrorCode::kInconclusive, "local multiplicity did not stabilize by jet order " + std::to_string(N));
}

LocalMultiplicity local_multiplicity(const Jet2& f, const Jet2& g, const LocalMultiplicityOptions& options) {
  return local_multiplicity(std::vector<Jet2>{f, g}, options);
}

bool local_membership(const Jet2& f, const std::vector<Jet2>& gens, const LocalMultiplicityOptions& options) {
  LocalMultiplicity lm = local_multiplicity(gens, options);
  if (!lm.finite()) throw Error(ErrorCode::kUnsupported, "membership test needs a finite local multiplicity");
  if (*lm.value == 0) return true;
  // m^(N+1) lies in <gens>, so membership is decided in the truncation.
  const int N = lm.certificate.order;
  std::vector<Jet2> at;
  for (const auto& g : gens) at.push_back(g.at_order(N));
  TruncatedStandardBasis sb = truncated_standard_basis(at, N);
  return truncated_normal_form(f.at_order(N), sb).empty();
}

}  // namespace leafmult
