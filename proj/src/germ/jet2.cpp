#include "leafmult/germ/jet2.hpp"

#include <algorithm>
#include <sstream>

#include "leafmult/error.hpp"

namespace leafmult {
namespace {

Jet2::CoeffMap truncate_map(const Jet2::CoeffMap& m, int n) {
  Jet2::CoeffMap out;
  for (const auto& [k, c] : m)
    if (k.first + k.second <= n) out.emplace(k, c);
  return out;
}

int result_order(const Jet2& a, const Jet2& b) {
  if (a.is_exact() && b.is_exact()) return std::max(a.order(), b.order());
  if (a.is_exact()) return b.order();
  if (b.is_exact()) return a.order();
  return std::min(a.order(), b.order());
}

void add_into(Jet2::CoeffMap& m, const Jet2::Key& k, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = m.emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) m.erase(it);
  }
}

Jet2::CoeffMap combine(const Jet2::CoeffMap& a, const Jet2::CoeffMap& b, JetOp op, int limit) {
  Jet2::CoeffMap out;
  if (op == JetOp::kMul) {
    for (const auto& [ka, ca] : a) {
      if (ka.first + ka.second > limit) continue;
      for (const auto& [kb, cb] : b) {
        Jet2::Key k{ka.first + kb.first, ka.second + kb.second};
        if (k.first + k.second <= limit) add_into(out, k, ca * cb);
      }
    }
    return out;
  }
  for (const auto& [k, c] : a)
    if (k.first + k.second <= limit) add_into(out, k, c);
  for (const auto& [k, c] : b)
    if (k.first + k.second <= limit) add_into(out, k, op == JetOp::kAdd ? Rational(c) : Rational(-c));
  return out;
}

}  // namespace

Jet2 Jet2::from_polynomial(const Polynomial& p, int order) {
  if (p.nvars() != 2) throw Error(ErrorCode::kInvalidArgument, "jet from a polynomial needs exactly two variables");
  CoeffMap full;
  for (const auto& [m, c] : p.terms()) full.emplace(Key{m[0], m[1]}, c);
  Jet2 j(order);
  j.coeffs_ = truncate_map(full, order);
  j.exact_ = std::make_shared<const CoeffMap>(std::move(full));
  return j;
}

Jet2 Jet2::constant(const Rational& c, int order) { return monomial(0, 0, c, order); }

Jet2 Jet2::variable(int var, int order) { return monomial(var == 0 ? 1 : 0, var == 0 ? 0 : 1, 1, order); }

Jet2 Jet2::monomial(int a, int b, const Rational& c, int order) {
  CoeffMap full;
  if (c != 0) full.emplace(Key{a, b}, c);
  Jet2 j(order);
  j.coeffs_ = truncate_map(full, order);
  j.exact_ = std::make_shared<const CoeffMap>(std::move(full));
  return j;
}

Rational Jet2::coeff(int a, int b) const {
  if (a + b > order_ && !is_exact())
    throw Error(ErrorCode::kNeedsRegeneration, "coefficient beyond the jet order requested");
  const CoeffMap& m = a + b > order_ ? *exact_ : coeffs_;
  auto it = m.find({a, b});
  return it == m.end() ? Rational(0) : it->second;
}

void Jet2::set(int a, int b, const Rational& c) {
  if (a < 0 || b < 0 || a + b > order_) throw Error(ErrorCode::kInvalidArgument, "jet coefficient outside the order");
  if (c == 0) coeffs_.erase({a, b});
  else coeffs_[{a, b}] = c;
}

void Jet2::add(int a, int b, const Rational& c) {
  if (a < 0 || b < 0 || a + b > order_) throw Error(ErrorCode::kInvalidArgument, "jet coefficient outside the order");
  add_into(coeffs_, {a, b}, c);
}

int Jet2::valuation() const {
  int v = -1;
  for (const auto& [k, c] : coeffs_)
    if (v < 0 || k.first + k.second < v) v = k.first + k.second;
  return v;
}

int Jet2::degree() const {
  int d = -1;
  for (const auto& [k, c] : coeffs_) d = std::max(d, k.first + k.second);
  return d;
}

void Jet2::set_exact_terms(CoeffMap terms) {
  if (truncate_map(terms, order_) != coeffs_)
    throw Error(ErrorCode::kInvalidArgument, "exact terms disagree with the stored jet");
  exact_ = std::make_shared<const CoeffMap>(std::move(terms));
}

Jet2 Jet2::truncated(int n) const {
  if (n > order_) return at_order(n);
  Jet2 j = *this;
  j.order_ = n;
  j.coeffs_ = truncate_map(coeffs_, n);
  return j;
}

Jet2 Jet2::at_order(int n) const {
  if (n <= order_) return truncated(n);
  if (is_exact()) {
    Jet2 j = *this;
    j.order_ = n;
    j.coeffs_ = truncate_map(*exact_, n);
    return j;
  }
  if (!producer_) throw Error(ErrorCode::kNeedsRegeneration, "jet has no producer for order " + std::to_string(n));
  Jet2 j = producer_(n);
  if (j.order() != n) j = j.truncated(n);
  if (!j.producer_) j.producer_ = producer_;
  return j;
}

Polynomial Jet2::to_polynomial(const RingPtr& ring) const {
  if (ring->size() != 2) throw Error(ErrorCode::kInvalidArgument, "leaf ring must have two variables");
  Polynomial p(ring);
  for (const auto& [k, c] : coeffs_) {
    Monomial m(2);
    m[0] = k.first;
    m[1] = k.second;
    p.add_term(m, c);
  }
  return p;
}

Jet2 Jet2::derivative(int var) const {
  auto diff = [var](const CoeffMap& m) {
    CoeffMap out;
    for (const auto& [k, c] : m) {
      int e = var == 0 ? k.first : k.second;
      if (e == 0) continue;
      Key nk = var == 0 ? Key{k.first - 1, k.second} : Key{k.first, k.second - 1};
      out.emplace(nk, c * e);
    }
    return out;
  };
  if (order_ == 0 && !is_exact()) throw Error(ErrorCode::kNeedsRegeneration, "derivative of an order-0 jet");
  Jet2 j(std::max(order_ - 1, 0));
  j.coeffs_ = truncate_map(diff(coeffs_), j.order_);
  if (is_exact()) {
    j.exact_ = std::make_shared<const CoeffMap>(diff(*exact_));
    j.coeffs_ = truncate_map(*j.exact_, j.order_);
  } else if (producer_) {
    Jet2 self = *this;
    j.producer_ = [self, var](int n) { return self.at_order(n + 1).derivative(var); };
  }
  return j;
}

Jet2& Jet2::operator*=(const Rational& c) {
  if (c == 0) {
    coeffs_.clear();
    exact_ = std::make_shared<const CoeffMap>();
    producer_ = nullptr;
    return *this;
  }
  for (auto& [k, v] : coeffs_) v *= c;
  if (exact_) {
    CoeffMap full = *exact_;
    for (auto& [k, v] : full) v *= c;
    exact_ = std::make_shared<const CoeffMap>(std::move(full));
  }
  if (producer_) {
    Producer inner = producer_;
    producer_ = [inner, c](int n) { return c * inner(n); };
  }
  return *this;
}

Jet2 jet_arith(const Jet2& a, const Jet2& b, JetOp op) {
  const int n = result_order(a, b);
  Jet2 r(n);
  Jet2 ea = a.at_order(n), eb = b.at_order(n);
  for (const auto& [k, c] : combine(ea.coefficients(), eb.coefficients(), op, n)) r.set(k.first, k.second, c);
  if (a.is_exact() && b.is_exact()) {
    auto max_degree = [](const Jet2::CoeffMap& m) {
      int d = 0;
      for (const auto& [k, c] : m) d = std::max(d, k.first + k.second);
      return d;
    };
    const int da = max_degree(a.exact_terms()), db = max_degree(b.exact_terms());
    const int limit = op == JetOp::kMul ? da + db : std::max(da, db);
    r.set_exact_terms(combine(a.exact_terms(), b.exact_terms(), op, limit));
  } else if (a.can_regenerate() && b.can_regenerate()) {
    r.set_producer([a, b, op](int m) { return jet_arith(a.at_order(m), b.at_order(m), op); });
  }
  return r;
}

Jet2 operator+(const Jet2& a, const Jet2& b) { return jet_arith(a, b, JetOp::kAdd); }
Jet2 operator-(const Jet2& a, const Jet2& b) { return jet_arith(a, b, JetOp::kSub); }
Jet2 operator*(const Jet2& a, const Jet2& b) { return jet_arith(a, b, JetOp::kMul); }

RingPtr leaf_ring() {
  static const RingPtr ring = make_ring({"t1", "t2"});
  return ring;
}

std::string to_string(const Jet2& jet) {
  std::string body = to_string(jet.to_polynomial(leaf_ring()));
  if (jet.is_exact()) return body;
  return body + " + O(" + std::to_string(jet.order() + 1) + ")";
}

}  // namespace leafmult
