#include "leafmult/ideal/ideal_ops.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace leafmult {
namespace {

std::string fresh_name(const Ring& ring, const std::string& base) {
  std::string name = base;
  while (ring.index_of(name) >= 0) name += "_";
  return name;
}

std::vector<Monomial> leading_monomials(const GroebnerBasis& gb) {
  std::vector<Monomial> lms;
  for (const auto& g : gb.basis) lms.push_back(leading_term(g, gb.order).first);
  return lms;
}

std::vector<Monomial> minimalize(std::vector<Monomial> mons) {
  std::sort(mons.begin(), mons.end(), [](const Monomial& a, const Monomial& b) {
    return DegRevLexGreater{}(b, a);
  });
  std::vector<Monomial> out;
  for (const auto& m : mons) {
    bool redundant = std::any_of(out.begin(), out.end(), [&](const Monomial& o) { return o.divides(m); });
    if (!redundant) out.push_back(m);
  }
  return out;
}

}  // namespace

bool radical_membership(const Polynomial& f, const IdealPresentation& ideal, const GroebnerOptions& options) {
  require_same_ring(f, Polynomial(ideal.ring()));
  if (f.is_zero()) return true;
  RingPtr ext = extend_ring(ideal.ring(), {fresh_name(*ideal.ring(), "t_rad")});
  std::vector<Polynomial> gens;
  for (const auto& g : ideal.generators()) gens.push_back(g.embed_into(ext));
  Polynomial t = Polynomial::variable(ext, ext->size() - 1);
  gens.push_back(Polynomial::constant(ext, 1) - t * f.embed_into(ext));
  return groebner(IdealPresentation(ext, std::move(gens)), MonomialOrder::degrevlex(ext->size()), options)
      .is_unit();
}

IdealPresentation leading_term_ideal(const IdealPresentation& ideal, const MonomialOrder& order,
                                     const GroebnerOptions& options) {
  GroebnerBasis gb = groebner(ideal, order, options);
  std::vector<Polynomial> gens;
  for (const auto& m : minimalize(leading_monomials(gb)))
    gens.push_back(Polynomial::term(ideal.ring(), m, 1));
  return IdealPresentation(ideal.ring(), std::move(gens));
}

std::optional<std::size_t> staircase_size(const std::vector<Monomial>& generators, std::size_t nvars) {
  std::vector<int> bound(nvars, -1);
  for (const auto& m : generators) {
    if (m.is_one()) return 0;
    int support = -1, count = 0;
    for (std::size_t i = 0; i < nvars; ++i)
      if (m[i] != 0) {
        support = static_cast<int>(i);
        ++count;
      }
    if (count == 1 && (bound[support] < 0 || m[support] < bound[support])) bound[support] = m[support];
  }
  if (std::any_of(bound.begin(), bound.end(), [](int b) { return b < 0; })) return std::nullopt;
  std::size_t count = 0;
  Monomial cur(nvars);
  std::function<void(std::size_t)> walk = [&](std::size_t var) {
    if (var == nvars) {
      bool in_ideal =
          std::any_of(generators.begin(), generators.end(), [&](const Monomial& g) { return g.divides(cur); });
      if (!in_ideal) ++count;
      return;
    }
    for (int e = 0; e < bound[var]; ++e) {
      cur[var] = e;
      walk(var + 1);
    }
    cur[var] = 0;
  };
  walk(0);
  return count;
}

std::optional<std::size_t> multiplicity_zero_dim(const IdealPresentation& ideal, const MonomialOrder& order,
                                                 const GroebnerOptions& options) {
  GroebnerBasis gb = groebner(ideal, order, options);
  if (gb.basis.empty()) return std::nullopt;
  return staircase_size(leading_monomials(gb), ideal.ring()->size());
}

IdealPresentation ideal_power(const IdealPresentation& ideal, unsigned n) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "ideal power requires n >= 1");
  const auto& g = ideal.generators();
  std::vector<Polynomial> out;
  // Multisets of size n over the generators, as non-decreasing index tuples.
  std::vector<std::size_t> idx(n, 0);
  if (g.empty()) return ideal;
  for (;;) {
    Polynomial p = g[idx[0]];
    for (unsigned k = 1; k < n; ++k) p = p * g[idx[k]];
    out.push_back(std::move(p));
    int k = static_cast<int>(n) - 1;
    while (k >= 0 && idx[k] + 1 == g.size()) --k;
    if (k < 0) break;
    ++idx[k];
    for (unsigned l = k + 1; l < n; ++l) idx[l] = idx[k];
  }
  return IdealPresentation(ideal.ring(), std::move(out));
}

int dimension(const GroebnerBasis& gb) {
  if (gb.basis.empty()) return static_cast<int>(gb.ring->size());
  if (gb.is_unit()) return -1;
  auto lms = leading_monomials(gb);
  const std::size_t n = gb.ring->size();
  int best = 0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    int size = __builtin_popcountll(mask);
    if (size <= best) continue;
    bool independent = std::none_of(lms.begin(), lms.end(), [&](const Monomial& m) {
      for (std::size_t i = 0; i < n; ++i)
        if (m[i] != 0 && !(mask & (std::size_t{1} << i))) return false;
      return true;
    });
    if (independent) best = size;
  }
  return best;
}

int dimension(const IdealPresentation& ideal, const GroebnerOptions& options) {
  return dimension(groebner(ideal, MonomialOrder::degrevlex(ideal.ring()->size()), options));
}

IdealPresentation eliminate(const IdealPresentation& ideal, const std::vector<std::size_t>& eliminated,
                            const GroebnerOptions& options) {
  const std::size_t n = ideal.ring()->size();
  std::vector<std::size_t> priority = eliminated;
  for (std::size_t v = 0; v < n; ++v)
    if (std::find(eliminated.begin(), eliminated.end(), v) == eliminated.end()) priority.push_back(v);
  auto order = MonomialOrder::elimination(n, eliminated.size()).with_priority(priority);
  GroebnerBasis gb = groebner(ideal, order, options);
  std::vector<Polynomial> kept;
  for (const auto& g : gb.basis) {
    bool uses = std::any_of(eliminated.begin(), eliminated.end(), [&](std::size_t v) { return g.uses_variable(v); });
    if (!uses) kept.push_back(g);
  }
  return IdealPresentation(ideal.ring(), std::move(kept));
}

IdealPresentation intersect(const IdealPresentation& a, const IdealPresentation& b, const GroebnerOptions& options) {
  if (a.is_zero() || b.is_zero()) return IdealPresentation(a.ring(), {});
  RingPtr ext = extend_ring(a.ring(), {fresh_name(*a.ring(), "t_int")});
  Polynomial t = Polynomial::variable(ext, ext->size() - 1);
  Polynomial one_minus_t = Polynomial::constant(ext, 1) - t;
  std::vector<Polynomial> gens;
  for (const auto& g : a.generators()) gens.push_back(t * g.embed_into(ext));
  for (const auto& g : b.generators()) gens.push_back(one_minus_t * g.embed_into(ext));
  IdealPresentation elim = eliminate(IdealPresentation(ext, std::move(gens)), {ext->size() - 1}, options);
  std::vector<Polynomial> out;
  for (const auto& g : elim.generators()) {
    std::vector<std::size_t> map(ext->size());
    std::iota(map.begin(), map.end(), std::size_t{0});
    map.back() = 0;  // t does not occur
    out.push_back(g.map_into(a.ring(), map));
  }
  return IdealPresentation(a.ring(), std::move(out));
}

IdealPresentation sum(const IdealPresentation& a, const IdealPresentation& b) {
  std::vector<Polynomial> gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return IdealPresentation(a.ring(), std::move(gens));
}

bool contains(const IdealPresentation& super, const IdealPresentation& sub, const GroebnerOptions& options) {
  if (sub.is_zero()) return true;
  GroebnerBasis gb = groebner(super, MonomialOrder::degrevlex(super.ring()->size()), options);
  return std::all_of(sub.generators().begin(), sub.generators().end(),
                     [&](const Polynomial& g) { return is_member(g, gb); });
}

std::optional<unsigned> nullstellensatz_exponent(const Polynomial& f, const GroebnerBasis& gb, unsigned cap) {
  if (cap == 0) return std::nullopt;
  // Membership of f^e is monotone in e; normal forms multiply modulo I.
  auto nf_mul = [&](const Polynomial& a, const Polynomial& b) { return normal_form(a * b, gb); };
  std::vector<Polynomial> squares{normal_form(f, gb)};  // NF(f^(2^k))
  if (squares[0].is_zero()) return 1u;
  unsigned hit = 0;
  for (unsigned e = 2; e <= cap * 2; e *= 2) {
    squares.push_back(nf_mul(squares.back(), squares.back()));
    if (squares.back().is_zero()) {
      hit = e;
      break;
    }
    if (e >= cap) break;
  }
  if (hit == 0) return std::nullopt;
  // Bisect in (hit/2, hit]; NF(f^e) assembled from the binary expansion of e.
  auto nf_power = [&](unsigned e) {
    Polynomial r = Polynomial::constant(gb.ring, 1);
    for (std::size_t k = 0; e; ++k, e >>= 1)
      if (e & 1u) r = nf_mul(r, squares[k]);
    return r;
  };
  unsigned lo = hit / 2, hi = hit;  // f^lo not in I, f^hi in I
  while (hi - lo > 1) {
    unsigned mid = lo + (hi - lo) / 2;
    if (nf_power(mid).is_zero()) hi = mid;
    else lo = mid;
  }
  if (hi > cap) return std::nullopt;
  return hi;
}


namespace {

struct Candidate {
  std::vector<Polynomial> gens;
  bool exact = false;
  std::string method;
};

Polynomial determinant(std::vector<std::vector<Polynomial>> m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  Polynomial det(m[0][0].ring());
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    std::vector<std::vector<Polynomial>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Polynomial> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(std::move(row));
    }
    Polynomial term = m[0][j] * determinant(std::move(minor));
    if (j % 2) det -= term;
    else det += term;
  }
  return det;
}

// c generators cutting out codimension c whose c x c Jacobian minors vanish
// only in smaller dimension generate a reduced ideal.
bool is_reduced_complete_intersection(const RingPtr& ring, const std::vector<Polynomial>& gens, int dim,
                                      const GroebnerOptions& options) {
  const std::size_t n = ring->size();
  if (dim < 0 || gens.size() + static_cast<std::size_t>(dim) != n || gens.empty()) return false;
  IdealPresentation ideal(ring, gens);
  if (ideal.generators().size() != gens.size()) return false;
  if (dimension(ideal, options) != dim) return false;
  const std::size_t c = gens.size();
  std::vector<Polynomial> extended = gens;
  std::vector<std::size_t> cols(c);
  std::iota(cols.begin(), cols.end(), std::size_t{0});
  for (;;) {
    std::vector<std::vector<Polynomial>> m(c);
    for (std::size_t i = 0; i < c; ++i)
      for (std::size_t j : cols) m[i].push_back(derive(gens[i], j));
    extended.push_back(determinant(std::move(m)));
    int k = static_cast<int>(c) - 1;
    while (k >= 0 && cols[k] == n - c + k) --k;
    if (k < 0) break;
    ++cols[k];
    for (std::size_t l = k + 1; l < c; ++l) cols[l] = cols[l - 1] + 1;
  }
  return dimension(IdealPresentation(ring, std::move(extended)), options) < dim;
}

bool is_monomial(const Polynomial& p) { return p.size() == 1; }

Candidate radical_candidate(const IdealPresentation& ideal, const GroebnerOptions& options) {
  const RingPtr& ring = ideal.ring();
  const std::size_t n = ring->size();
  GroebnerBasis gb = groebner(ideal, MonomialOrder::degrevlex(n), options);
  if (gb.basis.empty()) return {{}, true, "zero ideal"};
  if (gb.is_unit()) return {{Polynomial::constant(ring, 1)}, true, "unit ideal"};
  const auto& basis = gb.basis;
  if (basis.size() == 1) return {{squarefree_part(basis[0])}, true, "principal"};

  std::vector<std::size_t> used;
  for (std::size_t v = 0; v < n; ++v)
    if (std::any_of(basis.begin(), basis.end(), [&](const Polynomial& g) { return g.uses_variable(v); }))
      used.push_back(v);
  if (used.size() < n) {
    std::vector<std::string> names;
    for (std::size_t v : used) names.push_back(ring->name(v));
    RingPtr sub = make_ring(names);
    // Unused variables never occur, so any target index works for them.
    std::vector<std::size_t> project(n, 0);
    for (std::size_t k = 0; k < used.size(); ++k) project[used[k]] = k;
    std::vector<Polynomial> gens;
    for (const auto& g : basis) gens.push_back(g.map_into(sub, project));
    Candidate c = radical_candidate(IdealPresentation(sub, std::move(gens)), options);
    for (auto& g : c.gens) g = g.embed_into(ring);
    c.method = "unused variables dropped; " + c.method;
    return c;
  }

  Polynomial d = gcd(std::span<const Polynomial>(basis));
  if (!d.is_constant()) {
    std::vector<Polynomial> rest;
    for (const auto& g : basis) rest.push_back(divide_exact(g, d));
    Candidate inner = radical_candidate(IdealPresentation(ring, std::move(rest)), options);
    IdealPresentation meet = intersect(IdealPresentation(ring, {squarefree_part(d)}),
                                       IdealPresentation(ring, inner.gens), options);
    return {meet.generators(), inner.exact, "common factor split; " + inner.method};
  }

  if (std::all_of(basis.begin(), basis.end(), is_monomial)) {
    std::vector<Polynomial> gens;
    for (const auto& g : basis) {
      Monomial m = g.leading_monomial();
      for (std::size_t i = 0; i < n; ++i) m[i] = m[i] ? 1 : 0;
      gens.push_back(Polynomial::term(ring, m, 1));
    }
    return {gens, true, "monomial ideal"};
  }

  int dim = dimension(gb);
  if (dim == 0) {
    std::vector<Polynomial> gens = basis;
    for (std::size_t v = 0; v < n; ++v) {
      std::vector<std::size_t> others;
      for (std::size_t w = 0; w < n; ++w)
        if (w != v) others.push_back(w);
      IdealPresentation elim = eliminate(ideal, others, options);
      for (const auto& e : elim.generators()) gens.push_back(squarefree_part(e));
    }
    return {gens, true, "zero-dimensional (squarefree eliminants)"};
  }

  std::vector<Polynomial> sq;
  for (const auto& g : basis) sq.push_back(squarefree_part(g));
  if (is_reduced_complete_intersection(ring, basis, dim, options))
    return {basis, true, "reduced complete intersection"};
  if (is_reduced_complete_intersection(ring, sq, dim, options))
    return {sq, true, "reduced complete intersection of squarefree generators"};
  return {sq, false, "squarefree generators"};
}

}  // namespace

RadicalResult attempt_radical(const IdealPresentation& ideal, const RadicalOptions& options) {
  const RingPtr& ring = ideal.ring();
  const auto order = MonomialOrder::degrevlex(ring->size());
  Candidate cand = radical_candidate(ideal, options.groebner);
  GroebnerBasis gb_j = groebner(IdealPresentation(ring, cand.gens), order, options.groebner);

  RadicalResult result;
  result.radical = IdealPresentation(ring, gb_j.basis);
  result.method = cand.method;
  result.status = cand.exact ? RadicalResult::Status::kExact : RadicalResult::Status::kPartial;
  result.certificate.cap = options.exponent_cap;

  GroebnerBasis gb_i = groebner(ideal, order, options.groebner);
  for (const auto& g : result.radical.generators()) {
    auto e = nullstellensatz_exponent(g, gb_i, options.exponent_cap);
    if (!e && !radical_membership(g, ideal, options.groebner))
      throw Error(ErrorCode::kCertificate, "radical candidate generator " + to_string(g) + " is not in sqrt(I)");
    result.certificate.entries.push_back({g, e});
  }
  for (const auto& g : ideal.generators())
    if (!is_member(g, gb_j))
      throw Error(ErrorCode::kCertificate, "generator " + to_string(g) + " of I is not in the radical candidate");
  return result;
}

}  // namespace leafmult
