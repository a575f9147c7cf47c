#include "leafmult/ideal/groebner.hpp"

#include <algorithm>
#include <list>

namespace leafmult {

IdealPresentation::IdealPresentation(RingPtr ring, std::vector<Polynomial> generators)
    : ring_(std::move(ring)) {
  for (auto& g : generators) {
    if (g.is_zero()) continue;
    if (!(*g.ring() == *ring_)) throw Error(ErrorCode::kRingMismatch, "generator outside the ideal's ring");
    if (std::find(gens_.begin(), gens_.end(), g) != gens_.end()) continue;
    gens_.push_back(std::move(g));
  }
}

bool GroebnerBasis::is_unit() const { return basis.size() == 1 && basis[0].is_constant(); }

namespace {

using Term = std::pair<Monomial, Rational>;

// Terms sorted decreasingly under the working order.
struct WorkPoly {
  std::vector<Term> terms;
  bool empty() const { return terms.empty(); }
  const Monomial& lm() const { return terms.front().first; }
  const Rational& lc() const { return terms.front().second; }
};

class Engine {
 public:
  Engine(const MonomialOrder& order, RingPtr ring, const GroebnerOptions& options)
      : order_(order), ring_(std::move(ring)), options_(options) {}

  WorkPoly from(const Polynomial& p) const {
    WorkPoly w;
    w.terms.assign(p.terms().begin(), p.terms().end());
    std::sort(w.terms.begin(), w.terms.end(),
              [&](const Term& a, const Term& b) { return order_.compare(a.first, b.first) > 0; });
    return w;
  }

  Polynomial to_poly(const WorkPoly& w) const {
    Polynomial p(ring_);
    for (const auto& [m, c] : w.terms) p.add_term(m, c);
    return p;
  }

  // a - c * t * b, merged in order.
  WorkPoly sub_multiple(const WorkPoly& a, const Rational& c, const Monomial& t, const WorkPoly& b) const {
    WorkPoly r;
    r.terms.reserve(a.terms.size() + b.terms.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms.size() || j < b.terms.size()) {
      if (j == b.terms.size()) {
        r.terms.push_back(a.terms[i++]);
        continue;
      }
      Monomial mb = b.terms[j].first * t;
      int cmp = i == a.terms.size() ? -1 : order_.compare(a.terms[i].first, mb);
      if (cmp > 0) {
        r.terms.push_back(a.terms[i++]);
      } else if (cmp < 0) {
        r.terms.emplace_back(std::move(mb), -c * b.terms[j].second);
        ++j;
      } else {
        Rational v = a.terms[i].second - c * b.terms[j].second;
        if (v != 0) r.terms.emplace_back(std::move(mb), std::move(v));
        ++i;
        ++j;
      }
    }
    return r;
  }

  void make_monic(WorkPoly& w) const {
    if (w.empty() || w.lc() == 1) return;
    Rational inv = 1 / w.lc();
    for (auto& t : w.terms) t.second *= inv;
  }

  const WorkPoly* find_reducer(const Monomial& m, const std::vector<WorkPoly>& basis,
                               const std::vector<bool>* active) const {
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (active && !(*active)[k]) continue;
      if (basis[k].lm().divides(m)) return &basis[k];
    }
    return nullptr;
  }

  WorkPoly reduce(WorkPoly f, const std::vector<WorkPoly>& basis, const std::vector<bool>* active) {
    WorkPoly out;
    while (!f.empty()) {
      const WorkPoly* g = find_reducer(f.lm(), basis, active);
      if (!g) {
        out.terms.push_back(f.terms.front());
        f.terms.erase(f.terms.begin());
        continue;
      }
      tick();
      Rational c = f.lc() / g->lc();
      Monomial t = f.lm() / g->lm();
      f = sub_multiple(f, c, t, *g);
    }
    return out;
  }

  void tick() {
    if (++steps_ > options_.max_steps) throw_budget();
  }

  [[noreturn]] void throw_budget() const {
    std::vector<Polynomial> partial;
    for (std::size_t k = 0; k < basis_.size(); ++k)
      if (active_[k]) partial.push_back(to_poly(basis_[k]));
    throw BudgetError("Groebner basis exceeded its step budget of " + std::to_string(options_.max_steps),
                      std::move(partial));
  }

  struct Pair {
    std::size_t i, j;
    Monomial lcm;
    int degree;
  };

  void update(std::size_t h) {
    const Monomial& lh = basis_[h].lm();
    std::vector<Pair> candidates;
    for (std::size_t g = 0; g < h; ++g) {
      if (!active_[g]) continue;
      Monomial l = lcm(lh, basis_[g].lm());
      int d = l.total_degree();
      candidates.push_back({g, h, std::move(l), d});
    }
    // Chain criterion among the new pairs.
    std::vector<Pair> kept;
    for (std::size_t a = 0; a < candidates.size(); ++a) {
      const Pair& p = candidates[a];
      bool is_coprime = coprime(lh, basis_[p.i].lm());
      bool dominated = false;
      if (!is_coprime) {
        for (std::size_t b = 0; b < candidates.size() && !dominated; ++b) {
          if (b == a) continue;
          const Pair& q = candidates[b];
          if (!q.lcm.divides(p.lcm)) continue;
          // Ties keep the pair with the smaller index so exactly one survives.
          if (q.lcm == p.lcm && b > a) continue;
          dominated = true;
        }
      }
      if (!dominated) kept.push_back(p);
    }
    // Drop old pairs whose lcm is divisible by lm(h) strictly.
    std::vector<Pair> old;
    for (auto& p : pairs_) {
      bool drop = lh.divides(p.lcm) && lcm(basis_[p.i].lm(), lh) != p.lcm &&
                  lcm(basis_[p.j].lm(), lh) != p.lcm;
      if (!drop) old.push_back(std::move(p));
    }
    pairs_ = std::move(old);
    for (auto& p : kept) {
      ++stats_.pairs_considered;
      if (coprime(lh, basis_[p.i].lm())) continue;  // product criterion
      pairs_.push_back(std::move(p));
    }
    for (std::size_t g = 0; g < h; ++g)
      if (active_[g] && lh.divides(basis_[g].lm())) active_[g] = false;
  }

  void add(WorkPoly w) {
    make_monic(w);
    stats_.max_degree = std::max(stats_.max_degree, w.lm().total_degree());
    basis_.push_back(std::move(w));
    active_.push_back(true);
    update(basis_.size() - 1);
  }

  GroebnerBasis run(const IdealPresentation& ideal) {
    std::vector<WorkPoly> inputs;
    for (const auto& g : ideal.generators()) inputs.push_back(from(g));
    std::sort(inputs.begin(), inputs.end(), [&](const WorkPoly& a, const WorkPoly& b) {
      return order_.compare(a.lm(), b.lm()) < 0;
    });
    for (auto& w : inputs) {
      WorkPoly r = reduce(std::move(w), basis_, &active_);
      if (!r.empty()) add(std::move(r));
    }
    while (!pairs_.empty()) {
      auto best = std::min_element(pairs_.begin(), pairs_.end(), [&](const Pair& a, const Pair& b) {
        if (a.degree != b.degree) return a.degree < b.degree;
        int c = order_.compare(a.lcm, b.lcm);
        if (c != 0) return c < 0;
        return std::tie(a.i, a.j) < std::tie(b.i, b.j);
      });
      Pair p = *best;
      pairs_.erase(best);
      tick();
      ++stats_.pairs_reduced;
      const WorkPoly& f = basis_[p.i];
      const WorkPoly& g = basis_[p.j];
      WorkPoly s = sub_multiple(WorkPoly{}, Rational(-1), p.lcm / f.lm(), f);
      s = sub_multiple(s, Rational(1), p.lcm / g.lm(), g);  // basis elements are monic
      WorkPoly r = reduce(std::move(s), basis_, nullptr);
      if (!r.empty()) add(std::move(r));
    }
    // Interreduce the minimal basis.
    std::vector<WorkPoly> minimal;
    for (std::size_t k = 0; k < basis_.size(); ++k)
      if (active_[k]) minimal.push_back(basis_[k]);
    std::vector<WorkPoly> reduced;
    for (std::size_t k = 0; k < minimal.size(); ++k) {
      std::vector<WorkPoly> others;
      for (std::size_t l = 0; l < minimal.size(); ++l)
        if (l != k) others.push_back(minimal[l]);
      WorkPoly head;
      head.terms.push_back(minimal[k].terms.front());
      WorkPoly tail;
      tail.terms.assign(minimal[k].terms.begin() + 1, minimal[k].terms.end());
      WorkPoly rt = reduce(std::move(tail), others, nullptr);
      head.terms.insert(head.terms.end(), rt.terms.begin(), rt.terms.end());
      make_monic(head);
      reduced.push_back(std::move(head));
    }
    std::sort(reduced.begin(), reduced.end(), [&](const WorkPoly& a, const WorkPoly& b) {
      return order_.compare(a.lm(), b.lm()) < 0;
    });
    GroebnerBasis gb;
    gb.order = order_;
    gb.ring = ring_;
    gb.reduced = true;
    for (const auto& w : reduced) gb.basis.push_back(to_poly(w));
    stats_.reduction_steps = steps_;
    gb.stats = stats_;
    return gb;
  }

 private:
  MonomialOrder order_;
  RingPtr ring_;
  GroebnerOptions options_;
  std::vector<WorkPoly> basis_;
  std::vector<bool> active_;
  std::vector<Pair> pairs_;
  GroebnerStats stats_;
  std::size_t steps_ = 0;
};

}  // namespace

GroebnerBasis groebner(const IdealPresentation& ideal, const MonomialOrder& order,
                       const GroebnerOptions& options) {
  if (!order.is_global())
    throw Error(ErrorCode::kInvalidArgument, "groebner() requires a global order; use a local standard basis");
  if (order.priority().size() != ideal.ring()->size())
    throw Error(ErrorCode::kInvalidArgument, "monomial order does not match the ring");
  Engine engine(order, ideal.ring(), options);
  return engine.run(ideal);
}

Polynomial normal_form(const Polynomial& f, const GroebnerBasis& gb) {
  if (f.ring() && gb.ring) require_same_ring(f, Polynomial(gb.ring));
  Engine engine(gb.order, gb.ring, GroebnerOptions{static_cast<std::size_t>(-1)});
  std::vector<WorkPoly> basis;
  for (const auto& g : gb.basis) basis.push_back(engine.from(g));
  return engine.to_poly(engine.reduce(engine.from(f), basis, nullptr));
}

}  // namespace leafmult
