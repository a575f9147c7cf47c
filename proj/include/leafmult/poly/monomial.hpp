#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <vector>

namespace leafmult {

/// Exponent vector of a monomial, one entry per ring variable.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exp_(nvars, 0) {}
  Monomial(std::initializer_list<int> exps) : exp_(exps) {}
  explicit Monomial(std::vector<int> exps) : exp_(std::move(exps)) {}

  static Monomial unit_vector(std::size_t nvars, std::size_t var, int power = 1) {
    Monomial m(nvars);
    m.exp_[var] = power;
    return m;
  }

  std::size_t size() const { return exp_.size(); }
  int operator[](std::size_t i) const { return exp_[i]; }
  int& operator[](std::size_t i) { return exp_[i]; }
  const std::vector<int>& exponents() const { return exp_; }

  int total_degree() const {
    int d = 0;
    for (int e : exp_) d += e;
    return d;
  }
  bool is_one() const {
    for (int e : exp_)
      if (e != 0) return false;
    return true;
  }

  /// True when this monomial divides `other`.
  bool divides(const Monomial& other) const {
    for (std::size_t i = 0; i < exp_.size(); ++i)
      if (exp_[i] > other.exp_[i]) return false;
    return true;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r(a);
    for (std::size_t i = 0; i < r.exp_.size(); ++i) r.exp_[i] += b.exp_[i];
    return r;
  }
  /// Quotient; caller guarantees `b` divides `a`.
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial r(a);
    for (std::size_t i = 0; i < r.exp_.size(); ++i) r.exp_[i] -= b.exp_[i];
    return r;
  }
  friend Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r(a);
    for (std::size_t i = 0; i < r.exp_.size(); ++i)
      r.exp_[i] = std::max(a.exp_[i], b.exp_[i]);
    return r;
  }
  friend bool coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.exp_.size(); ++i)
      if (a.exp_[i] != 0 && b.exp_[i] != 0) return false;
    return true;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;

 private:
  std::vector<int> exp_;
};

/// Strict weak ordering that puts the degrevlex-largest monomial first.
/// Polynomials store their terms in this order, so printing and
/// normalization are deterministic.
struct DegRevLexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    int da = a.total_degree(), db = b.total_degree();
    if (da != db) return da > db;
    for (std::size_t i = a.size(); i-- > 0;) {
      if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
  }
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (int e : m.exponents()) h = (h ^ static_cast<std::size_t>(e)) * 1099511628211ull;
    return h;
  }
};

}  // namespace leafmult
