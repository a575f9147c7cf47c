#include "leafmult/germ/local_basis.hpp"

#include <algorithm>
#include <deque>

#include "leafmult/error.hpp"

namespace leafmult {
namespace {

using Key = Jet2::Key;
using Term = std::pair<Key, Rational>;
using Terms = std::vector<Term>;

int deg(const Key& k) { return k.first + k.second; }

// Local order: lower degree leads; equal degree, higher t1 power leads.
bool leads(const Key& a, const Key& b) {
  if (deg(a) != deg(b)) return deg(a) < deg(b);
  return a.first > b.first;
}

bool divides(const Key& a, const Key& b) { return a.first <= b.first && a.second <= b.second; }

Terms to_terms(const Jet2::CoeffMap& m, int order) {
  Terms t;
  for (const auto& [k, c] : m)
    if (deg(k) <= order) t.emplace_back(k, c);
  std::sort(t.begin(), t.end(), [](const Term& x, const Term& y) { return leads(x.first, y.first); });
  return t;
}

// f - c * t^shift * g, dropping terms above the order.
Terms sub_shifted(const Terms& f, const Rational& c, const Key& shift, const Terms& g, int order) {
  Terms out;
  out.reserve(f.size() + g.size());
  std::size_t i = 0, j = 0;
  auto shifted = [&](std::size_t idx) {
    return Key{g[idx].first.first + shift.first, g[idx].first.second + shift.second};
  };
  while (i < f.size() || j < g.size()) {
    if (j < g.size() && deg(shifted(j)) > order) {
      ++j;
      continue;
    }
    if (j == g.size() || (i < f.size() && leads(f[i].first, shifted(j)))) {
      out.push_back(f[i++]);
    } else if (i == f.size() || leads(shifted(j), f[i].first)) {
      out.emplace_back(shifted(j), -c * g[j].second);
      ++j;
    } else {
      Rational v = f[i].second - c * g[j].second;
      if (v != 0) out.emplace_back(f[i].first, v);
      ++i;
      ++j;
    }
  }
  return out;
}

void make_monic(Terms& f) {
  if (f.empty() || f[0].second == 1) return;
  Rational inv = 1 / f[0].second;
  for (auto& t : f) t.second *= inv;
}

const Terms* find_reducer(const std::vector<Terms>& basis, const Key& lead) {
  for (const auto& g : basis)
    if (divides(g[0].first, lead)) return &g;
  return nullptr;
}

Terms top_reduce(Terms f, const std::vector<Terms>& basis, int order) {
  while (!f.empty()) {
    const Terms* g = find_reducer(basis, f[0].first);
    if (!g) break;
    Key shift{f[0].first.first - (*g)[0].first.first, f[0].first.second - (*g)[0].first.second};
    f = sub_shifted(f, f[0].second, shift, *g, order);
  }
  return f;
}

Terms full_reduce(Terms f, const std::vector<Terms>& basis, int order) {
  Terms rest;
  while (!f.empty()) {
    f = top_reduce(std::move(f), basis, order);
    if (f.empty()) break;
    rest.push_back(f[0]);
    f.erase(f.begin());
  }
  return rest;
}

std::vector<Terms> standard_basis_terms(const std::vector<Jet2>& gens, int order) {
  std::vector<Terms> basis;
  std::deque<std::pair<std::size_t, std::size_t>> pairs;
  auto add = [&](Terms f) {
    make_monic(f);
    for (std::size_t i = 0; i < basis.size(); ++i) pairs.emplace_back(i, basis.size());
    basis.push_back(std::move(f));
  };
  for (const auto& g : gens) {
    Jet2 at = g.order() >= order ? g : g.at_order(order);
    Terms f = top_reduce(to_terms(at.coefficients(), order), basis, order);
    if (!f.empty()) add(std::move(f));
  }
  while (!pairs.empty()) {
    auto [i, j] = pairs.front();
    pairs.pop_front();
    const Key a = basis[i][0].first, b = basis[j][0].first;
    Key l{std::max(a.first, b.first), std::max(a.second, b.second)};
    if (deg(l) > order) continue;
    if (l.first == a.first + b.first && l.second == a.second + b.second) continue;  // coprime leads
    Terms s = sub_shifted(Terms{}, Rational(-1), Key{l.first - a.first, l.second - a.second}, basis[i], order);
    s = sub_shifted(s, Rational(1), Key{l.first - b.first, l.second - b.second}, basis[j], order);
    s = top_reduce(std::move(s), basis, order);
    if (!s.empty()) add(std::move(s));
  }
  return basis;
}

}  // namespace

TruncatedStandardBasis truncated_standard_basis(const std::vector<Jet2>& gens, int order) {
  if (order < 0) throw Error(ErrorCode::kInvalidArgument, "negative truncation order");
  TruncatedStandardBasis sb;
  sb.order = order;
  for (auto& t : standard_basis_terms(gens, order)) {
    Jet2::CoeffMap m(t.begin(), t.end());
    sb.basis.push_back(std::move(m));
  }
  std::vector<Key> leads_found;
  for (const auto& b : sb.basis) {
    Key lead = to_terms(b, order)[0].first;
    leads_found.push_back(lead);
  }
  for (const auto& k : leads_found) {
    bool minimal = std::none_of(leads_found.begin(), leads_found.end(),
                                [&](const Key& o) { return o != k && divides(o, k); });
    if (minimal && std::find(sb.leading.begin(), sb.leading.end(), k) == sb.leading.end()) sb.leading.push_back(k);
  }
  std::sort(sb.leading.begin(), sb.leading.end());
  sb.contains_unit = std::find(sb.leading.begin(), sb.leading.end(), Key{0, 0}) != sb.leading.end();
  for (int d = 0; d <= order; ++d)
    for (int a = d; a >= 0; --a) {
      Key k{a, d - a};
      if (std::none_of(sb.leading.begin(), sb.leading.end(), [&](const Key& l) { return divides(l, k); }))
        sb.staircase.push_back(k);
    }
  return sb;
}

Jet2::CoeffMap truncated_normal_form(const Jet2& f, const TruncatedStandardBasis& sb) {
  std::vector<Terms> basis;
  for (const auto& b : sb.basis) basis.push_back(to_terms(b, sb.order));
  Jet2 at = f.order() >= sb.order ? f : f.at_order(sb.order);
  Terms r = full_reduce(to_terms(at.coefficients(), sb.order), basis, sb.order);
  return Jet2::CoeffMap(r.begin(), r.end());
}

}  // namespace leafmult
