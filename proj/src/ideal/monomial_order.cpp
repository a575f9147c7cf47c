#include "leafmult/ideal/monomial_order.hpp"

#include <numeric>

#include "leafmult/error.hpp"

namespace leafmult {

MonomialOrder::MonomialOrder(Kind kind, std::size_t nvars, std::size_t block)
    : kind_(kind), block_(block), priority_(nvars) {
  std::iota(priority_.begin(), priority_.end(), std::size_t{0});
}

MonomialOrder MonomialOrder::degrevlex(std::size_t nvars) { return {Kind::kDegRevLex, nvars, 0}; }
MonomialOrder MonomialOrder::lex(std::size_t nvars) { return {Kind::kLex, nvars, 0}; }
MonomialOrder MonomialOrder::elimination(std::size_t nvars, std::size_t block) {
  if (block > nvars) throw Error(ErrorCode::kInvalidArgument, "elimination block larger than ring");
  return {Kind::kElimination, nvars, block};
}
MonomialOrder MonomialOrder::local_negdegrevlex(std::size_t nvars) {
  return {Kind::kLocalNegDegRevLex, nvars, 0};
}

MonomialOrder MonomialOrder::with_priority(std::vector<std::size_t> priority) const {
  if (priority.size() != priority_.size())
    throw Error(ErrorCode::kInvalidArgument, "variable priority has wrong length");
  MonomialOrder o = *this;
  o.priority_ = std::move(priority);
  return o;
}

int MonomialOrder::revlex_tail(const Monomial& a, const Monomial& b, std::size_t from,
                               std::size_t to) const {
  for (std::size_t k = to; k-- > from;) {
    std::size_t v = priority_[k];
    if (a[v] != b[v]) return a[v] < b[v] ? 1 : -1;
  }
  return 0;
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  const std::size_t n = priority_.size();
  switch (kind_) {
    case Kind::kLex:
      for (std::size_t k = 0; k < n; ++k) {
        std::size_t v = priority_[k];
        if (a[v] != b[v]) return a[v] > b[v] ? 1 : -1;
      }
      return 0;
    case Kind::kDegRevLex: {
      int da = a.total_degree(), db = b.total_degree();
      if (da != db) return da > db ? 1 : -1;
      return revlex_tail(a, b, 0, n);
    }
    case Kind::kLocalNegDegRevLex: {
      int da = a.total_degree(), db = b.total_degree();
      if (da != db) return da < db ? 1 : -1;
      return revlex_tail(a, b, 0, n);
    }
    case Kind::kElimination: {
      int da = 0, db = 0;
      for (std::size_t k = 0; k < block_; ++k) {
        da += a[priority_[k]];
        db += b[priority_[k]];
      }
      if (da != db) return da > db ? 1 : -1;
      if (int c = revlex_tail(a, b, 0, block_)) return c;
      int ra = a.total_degree() - da, rb = b.total_degree() - db;
      if (ra != rb) return ra > rb ? 1 : -1;
      return revlex_tail(a, b, block_, n);
    }
  }
  return 0;
}

std::string MonomialOrder::describe() const {
  switch (kind_) {
    case Kind::kDegRevLex: return "degrevlex";
    case Kind::kLex: return "lex";
    case Kind::kElimination: return "elimination(" + std::to_string(block_) + ")";
    case Kind::kLocalNegDegRevLex: return "local-negdegrevlex";
  }
  return "?";
}

std::pair<Monomial, Rational> leading_term(const Polynomial& p, const MonomialOrder& order) {
  if (p.is_zero()) throw Error(ErrorCode::kInvalidArgument, "leading term of zero");
  auto best = p.terms().begin();
  for (auto it = std::next(best); it != p.terms().end(); ++it)
    if (order.compare(it->first, best->first) > 0) best = it;
  return {best->first, best->second};
}

}  // namespace leafmult
