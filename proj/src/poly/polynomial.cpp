#include "leafmult/poly/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "leafmult/error.hpp"

namespace leafmult {

Ring::Ring(std::vector<std::string> names) : names_(std::move(names)) {}

int Ring::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<int>(i);
  return -1;
}

RingPtr make_ring(std::vector<std::string> names) {
  return std::make_shared<const Ring>(std::move(names));
}

RingPtr extend_ring(const RingPtr& base, const std::vector<std::string>& extra) {
  std::vector<std::string> names = base->names();
  names.insert(names.end(), extra.begin(), extra.end());
  return make_ring(std::move(names));
}

void require_same_ring(const Polynomial& a, const Polynomial& b) {
  if (a.ring() == b.ring()) return;
  if (!a.ring() || !b.ring() || !(*a.ring() == *b.ring()))
    throw Error(ErrorCode::kRingMismatch, "polynomials live in different rings");
}

Polynomial Polynomial::constant(RingPtr ring, const Rational& c) {
  Polynomial p(ring);
  if (c != 0) p.terms_.emplace(Monomial(ring->size()), c);
  return p;
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t var) {
  if (var >= ring->size()) throw Error(ErrorCode::kInvalidArgument, "variable index out of range");
  Polynomial p(ring);
  p.terms_.emplace(Monomial::unit_vector(ring->size(), var), Rational(1));
  return p;
}

Polynomial Polynomial::term(RingPtr ring, Monomial m, const Rational& c) {
  Polynomial p(ring);
  if (c != 0) p.terms_.emplace(std::move(m), c);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

int Polynomial::total_degree() const {
  return terms_.empty() ? -1 : terms_.begin()->first.total_degree();
}

int Polynomial::degree_in(std::size_t var) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
  return d;
}

int Polynomial::order() const {
  return terms_.empty() ? -1 : terms_.rbegin()->first.total_degree();
}

bool Polynomial::uses_variable(std::size_t var) const {
  for (const auto& [m, c] : terms_)
    if (m[var] != 0) return true;
  return false;
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational Polynomial::constant_term() const {
  if (terms_.empty()) return 0;
  const auto& last = *terms_.rbegin();
  return last.first.is_one() ? last.second : Rational(0);
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (!ring_) ring_ = other.ring_;
  require_same_ring(*this, other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (!ring_) ring_ = other.ring_;
  require_same_ring(*this, other);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_same_ring(a, b);
  Polynomial r(a.ring_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  *this = *this * other;
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

Polynomial operator-(Polynomial a) {
  for (auto& [m, c] : a.terms_) c = -c;
  return a;
}

Polynomial Polynomial::mul_term(const Monomial& m, const Rational& c) const {
  Polynomial r(ring_);
  if (c == 0) return r;
  // Multiplying by a monomial preserves the term order, so hint insertion.
  for (const auto& [mt, ct] : terms_) r.terms_.emplace_hint(r.terms_.end(), mt * m, ct * c);
  return r;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.terms_.empty() && b.terms_.empty()) {
    if (!a.ring_ || !b.ring_) return true;
  }
  if (a.ring_ != b.ring_ && (!a.ring_ || !b.ring_ || !(*a.ring_ == *b.ring_))) return false;
  return a.terms_ == b.terms_;
}

std::vector<Polynomial> Polynomial::coefficients_in(std::size_t var) const {
  std::vector<Polynomial> out(std::max(degree_in(var), 0) + 1, Polynomial(ring_));
  for (const auto& [m, c] : terms_) {
    Monomial rest = m;
    int k = rest[var];
    rest[var] = 0;
    out[k].add_term(rest, c);
  }
  return out;
}

Polynomial Polynomial::map_into(RingPtr target, std::span<const std::size_t> var_map) const {
  Polynomial r(target);
  for (const auto& [m, c] : terms_) {
    Monomial t(target->size());
    for (std::size_t i = 0; i < m.size(); ++i) t[var_map[i]] += m[i];
    r.add_term(t, c);
  }
  return r;
}

Polynomial Polynomial::embed_into(const RingPtr& target) const {
  std::vector<std::size_t> map;
  for (std::size_t i = 0; i < nvars(); ++i) {
    int j = target->index_of(ring_->name(i));
    if (j < 0) throw Error(ErrorCode::kRingMismatch, "variable " + ring_->name(i) + " missing in target ring");
    map.push_back(static_cast<std::size_t>(j));
  }
  return map_into(target, map);
}

Polynomial pow(const Polynomial& p, unsigned exponent) {
  Polynomial result = Polynomial::constant(p.ring(), 1);
  Polynomial base = p;
  while (exponent) {
    if (exponent & 1u) result *= base;
    exponent >>= 1;
    if (exponent) base = base * base;
  }
  return result;
}

Polynomial derive(const Polynomial& p, std::size_t var) {
  if (var >= p.nvars()) throw Error(ErrorCode::kInvalidArgument, "derivative variable out of range");
  Polynomial r(p.ring());
  for (const auto& [m, c] : p.terms()) {
    if (m[var] == 0) continue;
    Monomial d = m;
    d[var] -= 1;
    r.add_term(d, c * m[var]);
  }
  return r;
}

Rational evaluate(const Polynomial& p, std::span<const Rational> point) {
  if (point.size() != p.nvars())
    throw Error(ErrorCode::kInvalidArgument, "evaluation point has wrong arity");
  Rational sum = 0;
  for (const auto& [m, c] : p.terms()) {
    Rational t = c;
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i]) t *= pow(point[i], static_cast<unsigned>(m[i]));
    sum += t;
  }
  return sum;
}

Polynomial substitute(const Polynomial& p, std::span<const Polynomial> values) {
  if (values.size() != p.nvars())
    throw Error(ErrorCode::kInvalidArgument, "substitution has wrong arity");
  RingPtr target = values.empty() ? p.ring() : values[0].ring();
  std::vector<std::vector<Polynomial>> powers(values.size());
  auto power_of = [&](std::size_t i, int e) -> const Polynomial& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Polynomial::constant(target, 1));
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * values[i]);
    return cache[e];
  };
  Polynomial r(target);
  for (const auto& [m, c] : p.terms()) {
    Polynomial t = Polynomial::constant(target, c);
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i]) t *= power_of(i, m[i]);
    r += t;
  }
  return r;
}

bool try_divide(const Polynomial& a, const Polynomial& b, Polynomial& quotient) {
  require_same_ring(a, b);
  if (b.is_zero()) throw Error(ErrorCode::kInvalidArgument, "division by zero polynomial");
  Polynomial q(a.ring());
  Polynomial r = a;
  const Monomial& lb = b.leading_monomial();
  const Rational& cb = b.leading_coefficient();
  while (!r.is_zero()) {
    const Monomial& lr = r.leading_monomial();
    if (!lb.divides(lr)) return false;
    Monomial t = lr / lb;
    Rational c = r.leading_coefficient() / cb;
    q.add_term(t, c);
    r -= b.mul_term(t, c);
  }
  quotient = std::move(q);
  return true;
}

Polynomial divide_exact(const Polynomial& a, const Polynomial& b) {
  Polynomial q;
  if (!try_divide(a, b, q))
    throw Error(ErrorCode::kInvalidArgument, "polynomial division is not exact");
  return q;
}

Polynomial make_monic(const Polynomial& p) {
  if (p.is_zero()) return p;
  Rational inv = 1 / p.leading_coefficient();
  return p * inv;
}

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    bool negative = c < 0;
    Rational mag = negative ? Rational(-c) : c;
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (m.is_one() || mag != 1) {
      out << mag.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (wrote) out << '*';
      out << p.ring()->name(i);
      if (m[i] > 1) out << '^' << m[i];
      wrote = true;
    }
  }
  return out.str();
}

}  // namespace leafmult
