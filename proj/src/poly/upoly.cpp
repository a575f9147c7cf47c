#include "leafmult/poly/upoly.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "leafmult/error.hpp"

namespace leafmult {

UPoly::UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

UPoly UPoly::monomial(int degree, const Rational& c) {
  std::vector<Rational> v(degree + 1, Rational(0));
  v[degree] = c;
  return UPoly(std::move(v));
}

void UPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational UPoly::operator()(const Rational& x) const {
  Rational r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
  return UPoly(std::move(v));
}

UPoly operator-(const UPoly& a, const UPoly& b) {
  std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] -= b.c_[i];
  return UPoly(std::move(v));
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return UPoly();
  std::vector<Rational> v(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  return UPoly(std::move(v));
}

UPoly operator*(const UPoly& a, const Rational& c) {
  std::vector<Rational> v = a.c_;
  for (auto& x : v) x *= c;
  return UPoly(std::move(v));
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw Error(ErrorCode::kInvalidArgument, "univariate division by zero");
  if (a.degree() < b.degree()) return {UPoly(), a};
  std::vector<Rational> r = a.coeffs();
  std::vector<Rational> q(a.degree() - b.degree() + 1, Rational(0));
  const auto& bc = b.coeffs();
  for (int k = a.degree() - b.degree(); k >= 0; --k) {
    Rational c = r[k + b.degree()] / b.leading();
    q[k] = c;
    if (c == 0) continue;
    for (int j = 0; j <= b.degree(); ++j) r[k + j] -= c * bc[j];
  }
  r.resize(b.degree() > 0 ? b.degree() : 0);
  return {UPoly(std::move(q)), UPoly(std::move(r))};
}

UPoly derivative(const UPoly& p) {
  if (p.degree() <= 0) return UPoly();
  std::vector<Rational> v(p.degree());
  for (int k = 1; k <= p.degree(); ++k) v[k - 1] = p.coeff(k) * k;
  return UPoly(std::move(v));
}

UPoly monic(const UPoly& p) {
  if (p.is_zero()) return p;
  return p * (1 / p.leading());
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a, y = b;
  while (!y.is_zero()) {
    UPoly r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return monic(x);
}

std::pair<UPoly, UPoly> half_extended_gcd(const UPoly& a, const UPoly& m) {
  UPoly r0 = m, r1 = divmod(a, m).second;
  UPoly s0, s1 = UPoly::constant(1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    UPoly s = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.is_zero()) return {UPoly(), UPoly()};
  Rational inv = 1 / r0.leading();
  return {r0 * inv, divmod(s0 * inv, m).second};
}

std::vector<UPoly> squarefree_decomposition(const UPoly& p) {
  // Yun's algorithm.
  std::vector<UPoly> out;
  if (p.degree() <= 0) return out;
  UPoly dp = derivative(p);
  UPoly a = gcd(p, dp);
  UPoly b = divmod(p, a).first;
  UPoly c = divmod(dp, a).first;
  UPoly d = c - derivative(b);
  while (b.degree() > 0) {
    UPoly g = gcd(b, d);
    out.push_back(g);
    b = divmod(b, g).first;
    c = divmod(d, g).first;
    d = c - derivative(b);
  }
  while (!out.empty() && out.back().degree() == 0) out.pop_back();
  return out;
}

namespace {

std::vector<Integer> divisors(Integer n) {
  if (n < 0) n = -n;
  std::vector<std::pair<Integer, int>> primes;
  for (Integer p = 2; p * p <= n && p < 1000000; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) primes.emplace_back(p, e);
  }
  // Any remaining cofactor is treated as prime; rational roots whose
  // denominators hide a larger composite cofactor are then reported as
  // non-rational, which callers handle as algebraic.
  if (n > 1) primes.emplace_back(n, 1);
  std::vector<Integer> divs{1};
  for (const auto& [p, e] : primes) {
    std::size_t base = divs.size();
    Integer pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  return divs;
}

}  // namespace

std::vector<std::pair<Rational, int>> rational_roots(const UPoly& p) {
  std::vector<std::pair<Rational, int>> roots;
  auto factors = squarefree_decomposition(p);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    UPoly f = factors[i];
    int mult = static_cast<int>(i) + 1;
    if (f.degree() <= 0) continue;
    if (f.coeff(0) == 0) {
      roots.emplace_back(Rational(0), mult);
      f = divmod(f, UPoly::linear(0)).first;
    }
    if (f.degree() <= 0) continue;
    Integer lcm_den = 1;
    for (const auto& c : f.coeffs()) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
    Integer a0 = Rational(f.coeff(0) * lcm_den).get_num();
    Integer an = Rational(f.leading() * lcm_den).get_num();
    std::set<Rational> seen;
    for (const auto& num : divisors(a0)) {
      for (const auto& den : divisors(an)) {
        for (int sign : {1, -1}) {
          Rational cand(num * sign, den);
          cand.canonicalize();
          if (!seen.insert(cand).second) continue;
          if (f(cand) == 0) roots.emplace_back(cand, mult);
        }
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::string to_string(const UPoly& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int k = p.degree(); k >= 0; --k) {
    Rational c = p.coeff(k);
    if (c == 0) continue;
    bool neg = c < 0;
    Rational mag = neg ? Rational(-c) : c;
    if (first) {
      if (neg) out << '-';
    } else {
      out << (neg ? " - " : " + ");
    }
    first = false;
    if (k == 0 || mag != 1) {
      out << mag.get_str();
      if (k > 0) out << '*';
    }
    if (k > 0) out << var;
    if (k > 1) out << '^' << k;
  }
  return out.str();
}

AlgebraicElement::AlgebraicElement(std::shared_ptr<const UPoly> modulus, UPoly value) : modulus_(modulus) {
  value_ = modulus_ && modulus_->degree() > 0 ? divmod(value, *modulus_).second : std::move(value);
}

AlgebraicElement AlgebraicElement::operator+(const AlgebraicElement& o) const {
  return {modulus_ ? modulus_ : o.modulus_, value_ + o.value_};
}

AlgebraicElement AlgebraicElement::operator-(const AlgebraicElement& o) const {
  return {modulus_ ? modulus_ : o.modulus_, value_ - o.value_};
}

AlgebraicElement AlgebraicElement::operator*(const AlgebraicElement& o) const {
  return {modulus_ ? modulus_ : o.modulus_, value_ * o.value_};
}

AlgebraicElement AlgebraicElement::operator-() const { return {modulus_, value_ * Rational(-1)}; }

AlgebraicElement AlgebraicElement::inverse() const {
  if (value_.is_zero()) throw Error(ErrorCode::kInvalidArgument, "inverse of zero algebraic element");
  if (!modulus_ || modulus_->degree() <= 1) return {modulus_, UPoly::constant(1 / value_.coeff(0))};
  auto [g, s] = half_extended_gcd(value_, *modulus_);
  if (g.degree() != 0) throw Error(ErrorCode::kInvalidArgument, "algebraic element is a zero divisor");
  return {modulus_, s};
}

AlgebraicElement AlgebraicElement::pow(long exponent) const {
  AlgebraicElement base = exponent < 0 ? inverse() : *this;
  unsigned long e = exponent < 0 ? static_cast<unsigned long>(-exponent) : static_cast<unsigned long>(exponent);
  AlgebraicElement result(modulus_, Rational(1));
  while (e) {
    if (e & 1ul) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Rational AlgebraicElement::trace() const {
  if (!modulus_ || modulus_->degree() <= 1) return value_.coeff(0);
  // Power sums of the roots of the modulus via Newton's identities.
  const UPoly& m = *modulus_;
  int n = m.degree();
  std::vector<Rational> e(n + 1);  // elementary symmetric functions of the roots
  for (int k = 0; k <= n; ++k) {
    Rational c = m.coeff(n - k) / m.leading();
    e[k] = (k % 2 == 0) ? c : Rational(-c);
  }
  std::vector<Rational> ps(std::max(n, value_.degree() + 1), Rational(0));
  ps[0] = n;
  for (int k = 1; k < static_cast<int>(ps.size()); ++k) {
    Rational s = 0;
    for (int i = 1; i <= std::min(k - 1, n); ++i) s += ((i % 2 == 1) ? 1 : -1) * e[i] * ps[k - i];
    if (k <= n) s += ((k % 2 == 1) ? 1 : -1) * k * e[k];
    else {
      s = 0;
      for (int i = 1; i <= n; ++i) s += ((i % 2 == 1) ? 1 : -1) * e[i] * ps[k - i];
    }
    ps[k] = s;
  }
  Rational t = 0;
  for (int k = 0; k <= value_.degree(); ++k) t += value_.coeff(k) * ps[k];
  return t;
}

}  // namespace leafmult
